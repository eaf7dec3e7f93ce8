#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "driftsign/simulation.hpp"
#include "driftsign/value_functions.hpp"

namespace driftsign {

/// A two-threshold decision rule: decide sgn(M) once |M| >= a_init, then
/// reverse the standing decision whenever M * decision <= -b_switch. The
/// solved (a, b) pair gives the optimal rule; other pairs exist so perturbed
/// rules can be evaluated.
struct ThresholdRule {
  double a_init = 0.0;
  double b_switch = 0.0;

  void validate() const;
};

/// Decision bookkeeping for one path. Times are grid times; indices index the
/// path arrays. tau0_index = -1 flags a path that never reached the initial
/// threshold.
struct DecisionTrajectory {
  std::ptrdiff_t tau0_index = -1;
  int d = 0;
  std::vector<std::size_t> switch_indices;
  double dt = 0.0;
  std::size_t path_size = 0;

  bool triggered() const { return tau0_index >= 0; }
  double tau0() const {
    return triggered() ? dt * static_cast<double>(tau0_index)
                       : std::numeric_limits<double>::infinity();
  }
  std::vector<double> switch_times() const;

  /// The standing decision at grid point i: 0 before tau0, afterwards d
  /// flipped once per switch at or before i.
  int decision_at(std::size_t i) const;

  /// The whole decision process materialised, one entry per grid point.
  std::vector<int> d_process() const;
};

DecisionTrajectory run_rule(const ThresholdRule& rule, const PathSample& path);

/// Buffer-reusing variant for hot loops.
void run_rule(const ThresholdRule& rule, const PathSample& path,
              DecisionTrajectory& out);

/// Realised cost components of one decided path.
///
/// wrong_time_raw uses the simulated theta; wrong_time_conditioned integrates
/// c1 (1 - M D)/2 instead and needs no theta. tail_correction is the exact
/// expected remaining cost U(|m_end|, 1) when the final decision matches
/// sgn(m_end) and use_tail is set; otherwise it is zero and tail_applied
/// records that the truncated remainder was dropped.
struct PenaltyBreakdown {
  double delay = 0.0;
  double wrong_time_raw = 0.0;
  double wrong_time_conditioned = 0.0;
  double switch_cost = 0.0;
  double tail_correction = 0.0;
  bool tail_applied = false;

  double total_raw() const {
    return delay + wrong_time_raw + switch_cost + tail_correction;
  }
  double total_conditioned() const {
    return delay + wrong_time_conditioned + switch_cost + tail_correction;
  }
};

/// Left-endpoint rectangle integration of the running costs from tau0 to the
/// truncation point. Throws std::runtime_error if the path never triggered
/// (the horizon was too short to reach the initial threshold).
PenaltyBreakdown realized_penalty(const DecisionTrajectory& traj,
                                  const PathSample& path,
                                  const ValueContext& ctx, bool use_tail);

}  // namespace driftsign
