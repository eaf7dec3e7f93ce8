#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "driftsign/model.hpp"
#include "driftsign/rng.hpp"

namespace driftsign {

enum class Scheme { exact_posterior, euler_sde };

/// Discretisation controls for path generation.
///
/// t_max = 0 selects the per-instance default 1e4 * dt * ceil(1/mu^2). A path
/// ends at the first grid time where |m| >= m_stop, or at t_max.
struct SimConfig {
  double dt = 1e-3;
  double t_max = 0.0;
  double m_stop = 0.9999;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::exact_posterior;
};

double default_t_max(const Parameters& params, double dt);
double resolved_t_max(const Parameters& params, const SimConfig& cfg);
void validate_config(const Parameters& params, const SimConfig& cfg);

/// One simulated trajectory of (X, M) on the grid t_i = i * dt.
struct PathSample {
  int theta = 0;
  double dt = 0.0;
  std::vector<double> x;
  std::vector<double> m;
  double truncated_at = 0.0;
  std::uint64_t rng_stream_id = 0;

  std::size_t size() const { return m.size(); }
  double time(std::size_t i) const { return dt * static_cast<double>(i); }
};

namespace detail {

/// Shared core: theta from the path's substream, then X by Gaussian
/// increments of mean mu*theta*dt and variance dt, with M either recomputed
/// from the exact posterior formula or advanced by the Euler scheme of the
/// innovation SDE dM = mu (1 - M^2) (dX - mu M dt); the mu inside the
/// compensator is forced by Ito's formula on the explicit posterior map (the
/// predicted drift of X is mu M, and X - integral of M would not be a
/// martingale for mu != 1). The noise functor exists so tests can force
/// deterministic increments.
template <class NoiseFn>
void simulate_path_core(const Parameters& params, const SimConfig& cfg,
                        std::uint64_t path_index, Splitmix64& rng,
                        NoiseFn&& noise, PathSample& out) {
  out.theta = (rng.uniform01() < params.p) ? 1 : -1;
  out.dt = cfg.dt;
  out.rng_stream_id = path_index;
  out.x.clear();
  out.m.clear();

  const double t_max = resolved_t_max(params, cfg);
  const auto last_index =
      static_cast<std::size_t>(std::floor(t_max / cfg.dt + 1e-9));

  double x = 0.0;
  double m = initial_belief(params).m;
  out.x.push_back(x);
  out.m.push_back(m);
  if (std::abs(m) >= cfg.m_stop) {
    out.truncated_at = 0.0;
    return;
  }

  const double drift = params.mu * out.theta * cfg.dt;
  const double sqrt_dt = std::sqrt(cfg.dt);
  const bool exact = cfg.scheme == Scheme::exact_posterior;
  for (std::size_t i = 1; i <= last_index; ++i) {
    const double dx = drift + sqrt_dt * noise();
    x += dx;
    if (exact) {
      m = posterior_mean(params, x).m;
    } else {
      m += params.mu * (1.0 - m * m) * (dx - params.mu * m * cfg.dt);
      m = std::clamp(m, -1.0, 1.0);
    }
    out.x.push_back(x);
    out.m.push_back(m);
    if (std::abs(m) >= cfg.m_stop) break;
  }
  out.truncated_at = out.dt * static_cast<double>(out.size() - 1);
}

template <class NoiseFn>
PathSample simulate_path_forced_noise(const Parameters& params,
                                      const SimConfig& cfg,
                                      std::uint64_t path_index,
                                      NoiseFn&& noise) {
  validate_config(params, cfg);
  Splitmix64 rng = substream(cfg.seed, path_index);
  PathSample out;
  simulate_path_core(params, cfg, path_index, rng,
                     static_cast<NoiseFn&&>(noise), out);
  return out;
}

}  // namespace detail

PathSample simulate_path(const Parameters& params, const SimConfig& cfg,
                         std::uint64_t path_index);

/// Buffer-reusing variant for hot loops.
void simulate_path(const Parameters& params, const SimConfig& cfg,
                   std::uint64_t path_index, PathSample& out);

/// Max over n_paths of the sup-norm gap between the exact-posterior M and the
/// Euler M driven by the identical noise stream.
double compare_schemes(const Parameters& params, const SimConfig& cfg,
                       int n_paths);

/// CSV rows (t, x, m, d); d_process must have one entry per grid point.
void write_path_csv(std::ostream& os, const PathSample& path,
                    const std::vector<int>& d_process);

}  // namespace driftsign
