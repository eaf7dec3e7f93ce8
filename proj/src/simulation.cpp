#include "driftsign/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "driftsign/csv.hpp"

namespace driftsign {

double default_t_max(const Parameters& params, double dt) {
  return 1e4 * dt * std::ceil(1.0 / (params.mu * params.mu));
}

double resolved_t_max(const Parameters& params, const SimConfig& cfg) {
  return cfg.t_max > 0.0 ? cfg.t_max : default_t_max(params, cfg.dt);
}

void validate_config(const Parameters& params, const SimConfig& cfg) {
  params.validate();
  if (!(cfg.dt > 0.0 && cfg.dt <= 0.1))
    throw std::invalid_argument("SimConfig: dt must lie in (0, 0.1]");
  if (!(cfg.m_stop >= 0.9 && cfg.m_stop < 1.0))
    throw std::invalid_argument("SimConfig: m_stop must lie in [0.9, 1)");
  if (!(resolved_t_max(params, cfg) >= 100.0 * cfg.dt))
    throw std::invalid_argument("SimConfig: t_max must be >= 100 * dt");
}

PathSample simulate_path(const Parameters& params, const SimConfig& cfg,
                         std::uint64_t path_index) {
  PathSample out;
  simulate_path(params, cfg, path_index, out);
  return out;
}

void simulate_path(const Parameters& params, const SimConfig& cfg,
                   std::uint64_t path_index, PathSample& out) {
  validate_config(params, cfg);
  Splitmix64 rng = substream(cfg.seed, path_index);
  detail::simulate_path_core(params, cfg, path_index, rng,
                             [&rng] { return rng.normal(); }, out);
}

double compare_schemes(const Parameters& params, const SimConfig& cfg,
                       int n_paths) {
  if (n_paths < 1)
    throw std::invalid_argument("compare_schemes: n_paths must be >= 1");
  SimConfig exact_cfg = cfg;
  exact_cfg.scheme = Scheme::exact_posterior;
  SimConfig euler_cfg = cfg;
  euler_cfg.scheme = Scheme::euler_sde;

  PathSample exact_path;
  PathSample euler_path;
  double worst = 0.0;
  for (int i = 0; i < n_paths; ++i) {
    simulate_path(params, exact_cfg, static_cast<std::uint64_t>(i), exact_path);
    simulate_path(params, euler_cfg, static_cast<std::uint64_t>(i), euler_path);
    const std::size_t n = std::min(exact_path.size(), euler_path.size());
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(exact_path.m[j] - euler_path.m[j]));
  }
  return worst;
}

void write_path_csv(std::ostream& os, const PathSample& path,
                    const std::vector<int>& d_process) {
  if (d_process.size() != path.size())
    throw std::invalid_argument(
        "write_path_csv: d_process must match the path length");
  os << "t,x,m,d\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    os << format_double(path.time(i)) << ',' << format_double(path.x[i]) << ','
       << format_double(path.m[i]) << ',' << d_process[i] << '\n';
  }
}

}  // namespace driftsign
