#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "driftsign/decision.hpp"
#include "driftsign/model.hpp"
#include "driftsign/simulation.hpp"

namespace driftsign {

enum class Estimator { raw, conditioned };

/// Monte Carlo estimate of the expected total cost of one decision rule.
/// Paths that never reach the initial threshold are excluded from the mean,
/// counted in untriggered, and flag the estimate unreliable once they exceed
/// 0.1% of n_paths. tail_skipped counts truncated paths whose final decision
/// disagreed with sgn(M), where the exact tail value does not apply and the
/// remainder was dropped.
struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
  Estimator estimator = Estimator::conditioned;
  bool tail_corrected = false;
  double dt = 0.0;
  std::uint64_t seed = 0;
  long untriggered = 0;
  long tail_skipped = 0;
  bool unreliable = false;
};

/// Execution knobs shared by the estimators. n_workers = 0 uses the hardware
/// thread count; results are identical for every worker count.
struct McOptions {
  int n_workers = 0;
  bool use_tail = true;
  double threshold_tol = 1e-12;
};

RiskEstimate estimate_risk(const Parameters& params, const ThresholdRule& rule,
                           const SimConfig& cfg, long n_paths,
                           Estimator estimator, const McOptions& opts = {});

/// Both estimators from one set of paths, with the paired difference
/// raw - conditioned (its standard error is the honest yardstick for how far
/// apart the two means are allowed to be).
struct EstimatorComparison {
  RiskEstimate raw;
  RiskEstimate conditioned;
  double mean_diff = 0.0;
  double stderr_diff = 0.0;
};

EstimatorComparison compare_estimators(const Parameters& params,
                                       const ThresholdRule& rule,
                                       const SimConfig& cfg, long n_paths,
                                       const McOptions& opts = {});

/// One cell of the perturbation sweep: the rule (a + da, b + db) evaluated on
/// the same paths as every other cell. mean_diff and stderr_diff describe the
/// per-path difference to the baseline cell.
struct SweepCell {
  double da = 0.0;
  double db = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool skipped = false;
  RiskEstimate estimate;
  double mean_diff = 0.0;
  double stderr_diff = 0.0;
};

struct SweepResult {
  std::vector<double> offsets;
  std::vector<SweepCell> cells;
  std::size_t baseline_index = 0;
  Thresholds baseline;
};

/// Common-random-numbers sweep over the offset grid (da, db) around the
/// solved thresholds; offsets must contain 0 so the baseline cell exists.
/// Cells whose perturbed threshold leaves (0,1) are kept but marked skipped.
SweepResult optimality_sweep(const Parameters& params, const SimConfig& cfg,
                             long n_paths, const std::vector<double>& offsets,
                             const McOptions& opts = {});

/// CSV table of the sweep, one row per cell.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace driftsign
