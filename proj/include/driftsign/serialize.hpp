#pragma once

#include <json.hpp>

#include "driftsign/montecarlo.hpp"
#include "driftsign/thresholds.hpp"
#include "driftsign/value_functions.hpp"

namespace driftsign {

inline const char* to_string(Estimator e) {
  return e == Estimator::raw ? "raw" : "conditioned";
}

inline nlohmann::ordered_json to_json(const Thresholds& t) {
  return nlohmann::ordered_json{{"a", t.a},
                                {"b", t.b},
                                {"k", t.k},
                                {"residual_a", t.residual_a},
                                {"residual_b", t.residual_b}};
}

inline nlohmann::ordered_json to_json(const PropertyReport& r) {
  return nlohmann::ordered_json{{"property", to_string(r.property_id)},
                                {"grid_size", r.grid_size},
                                {"max_violation", r.max_violation},
                                {"tolerance", r.tolerance},
                                {"passed", r.passed}};
}

inline nlohmann::ordered_json to_json(const RiskEstimate& e) {
  return nlohmann::ordered_json{{"mean", e.mean},
                                {"stderr", e.std_error},
                                {"n_paths", e.n_paths},
                                {"estimator", to_string(e.estimator)},
                                {"tail_corrected", e.tail_corrected},
                                {"dt", e.dt},
                                {"seed", e.seed},
                                {"untriggered", e.untriggered},
                                {"tail_skipped", e.tail_skipped},
                                {"unreliable", e.unreliable}};
}

inline nlohmann::ordered_json to_json(const SweepCell& c) {
  nlohmann::ordered_json j{{"da", c.da},
                           {"db", c.db},
                           {"a", c.a},
                           {"b", c.b},
                           {"skipped", c.skipped}};
  if (!c.skipped) {
    j["estimate"] = to_json(c.estimate);
    j["mean_diff"] = c.mean_diff;
    j["stderr_diff"] = c.stderr_diff;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const SweepResult& s) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const SweepCell& c : s.cells) cells.push_back(to_json(c));
  return nlohmann::ordered_json{{"offsets", s.offsets},
                                {"baseline", to_json(s.baseline)},
                                {"baseline_index", s.baseline_index},
                                {"cells", cells}};
}

}  // namespace driftsign
