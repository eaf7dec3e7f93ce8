#include "driftsign/decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftsign {

void ThresholdRule::validate() const {
  if (!(a_init > 0.0 && a_init < 1.0))
    throw std::invalid_argument("ThresholdRule: a_init must lie in (0,1)");
  if (!(b_switch > 0.0 && b_switch < 1.0))
    throw std::invalid_argument("ThresholdRule: b_switch must lie in (0,1)");
}

std::vector<double> DecisionTrajectory::switch_times() const {
  std::vector<double> times;
  times.reserve(switch_indices.size());
  for (std::size_t idx : switch_indices)
    times.push_back(dt * static_cast<double>(idx));
  return times;
}

int DecisionTrajectory::decision_at(std::size_t i) const {
  if (!triggered() || static_cast<std::ptrdiff_t>(i) < tau0_index) return 0;
  const auto flips = std::upper_bound(switch_indices.begin(),
                                      switch_indices.end(), i) -
                     switch_indices.begin();
  return (flips % 2 == 0) ? d : -d;
}

std::vector<int> DecisionTrajectory::d_process() const {
  std::vector<int> out(path_size, 0);
  if (!triggered()) return out;
  int cur = d;
  std::size_t next_switch = 0;
  for (std::size_t i = static_cast<std::size_t>(tau0_index); i < path_size;
       ++i) {
    if (next_switch < switch_indices.size() && switch_indices[next_switch] == i) {
      cur = -cur;
      ++next_switch;
    }
    out[i] = cur;
  }
  return out;
}

DecisionTrajectory run_rule(const ThresholdRule& rule, const PathSample& path) {
  DecisionTrajectory out;
  run_rule(rule, path, out);
  return out;
}

void run_rule(const ThresholdRule& rule, const PathSample& path,
              DecisionTrajectory& out) {
  rule.validate();
  out.tau0_index = -1;
  out.d = 0;
  out.switch_indices.clear();
  out.dt = path.dt;
  out.path_size = path.size();

  const std::size_t n = path.size();
  std::size_t i = 0;
  while (i < n && std::abs(path.m[i]) < rule.a_init) ++i;
  if (i == n) return;

  out.tau0_index = static_cast<std::ptrdiff_t>(i);
  // sgn 0 = 1: an exactly-zero belief at the trigger decides +1.
  out.d = (path.m[i] >= 0.0) ? 1 : -1;

  // Crossings are closed: a grid value exactly at the boundary switches.
  int cur = out.d;
  for (; i < n; ++i) {
    if (path.m[i] * cur <= -rule.b_switch) {
      out.switch_indices.push_back(i);
      cur = -cur;
    }
  }
}

PenaltyBreakdown realized_penalty(const DecisionTrajectory& traj,
                                  const PathSample& path,
                                  const ValueContext& ctx, bool use_tail) {
  if (!traj.triggered())
    throw std::runtime_error(
        "realized_penalty: path never reached the initial threshold; "
        "increase t_max");
  if (traj.path_size != path.size())
    throw std::invalid_argument(
        "realized_penalty: trajectory does not match the path");

  const Parameters& params = ctx.params;
  const std::size_t n = path.size();
  const auto i0 = static_cast<std::size_t>(traj.tau0_index);

  PenaltyBreakdown out;
  out.delay = params.c0 * traj.tau0();

  int cur = traj.d;
  std::size_t next_switch = 0;
  std::size_t wrong_steps = 0;
  double conditioned_acc = 0.0;
  for (std::size_t i = i0; i + 1 < n; ++i) {
    if (next_switch < traj.switch_indices.size() &&
        traj.switch_indices[next_switch] == i) {
      cur = -cur;
      ++next_switch;
    }
    if (cur != path.theta) ++wrong_steps;
    conditioned_acc += 1.0 - path.m[i] * cur;
  }
  out.wrong_time_raw =
      params.c1 * path.dt * static_cast<double>(wrong_steps);
  out.wrong_time_conditioned = 0.5 * params.c1 * path.dt * conditioned_acc;
  out.switch_cost =
      params.c2 * static_cast<double>(traj.switch_indices.size());

  if (use_tail) {
    const double m_end = path.m[n - 1];
    const int final_decision = traj.decision_at(n - 1);
    const int sign_end = (m_end >= 0.0) ? 1 : -1;
    if (final_decision == sign_end) {
      out.tail_correction = value_U(ctx, std::abs(m_end), 1);
      out.tail_applied = true;
    }
  }
  return out;
}

}  // namespace driftsign
