#include "driftsign/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "driftsign/csv.hpp"
#include "driftsign/value_functions.hpp"

namespace driftsign {

namespace {

int resolve_workers(int n_workers) {
  if (n_workers > 0) return n_workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(first, last) over an even block partition of [0, n). The
/// partition depends only on n and the requested worker count, and every
/// output is a per-index slot, so results do not depend on scheduling.
template <class Body>
void parallel_blocks(long n, int workers, Body&& body) {
  workers = static_cast<int>(std::max<long>(1, std::min<long>(workers, n)));
  if (workers == 1) {
    body(0L, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const long first = n * w / workers;
    const long last = n * (w + 1) / workers;
    pool.emplace_back([&body, first, last] { body(first, last); });
  }
  for (auto& t : pool) t.join();
}

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
  long n = 0;
};

/// Two-pass mean and standard error over the valid entries, accumulated in
/// index order so the result is independent of how the values were produced.
Moments reduce(const double* values, const unsigned char* valid,
               std::size_t n) {
  Moments out;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid[i]) continue;
    sum += values[i];
    ++out.n;
  }
  if (out.n == 0) return out;
  out.mean = sum / static_cast<double>(out.n);
  if (out.n < 2) return out;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid[i]) continue;
    const double dev = values[i] - out.mean;
    ss += dev * dev;
  }
  const double var = ss / static_cast<double>(out.n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(out.n));
  return out;
}

Moments reduce(const std::vector<double>& values,
               const std::vector<unsigned char>& valid) {
  return reduce(values.data(), valid.data(), values.size());
}

struct EngineOutput {
  std::vector<double> raw;
  std::vector<double> conditioned;
  std::vector<unsigned char> valid;
  long untriggered = 0;
  long tail_skipped = 0;
};

EngineOutput run_engine(const Parameters& params, const ThresholdRule& rule,
                        const SimConfig& cfg, long n_paths,
                        const McOptions& opts) {
  params.validate();
  rule.validate();
  validate_config(params, cfg);
  if (n_paths < 100)
    throw std::invalid_argument("estimate_risk: n_paths must be >= 100");

  const ValueContext ctx = make_context(params, opts.threshold_tol);
  const auto n = static_cast<std::size_t>(n_paths);
  EngineOutput out;
  out.raw.assign(n, 0.0);
  out.conditioned.assign(n, 0.0);
  out.valid.assign(n, 0);
  std::vector<unsigned char> skipped_tail(n, 0);

  parallel_blocks(n_paths, resolve_workers(opts.n_workers),
                  [&](long first, long last) {
                    PathSample path;
                    DecisionTrajectory traj;
                    for (long i = first; i < last; ++i) {
                      simulate_path(params, cfg,
                                    static_cast<std::uint64_t>(i), path);
                      run_rule(rule, path, traj);
                      if (!traj.triggered()) continue;
                      const PenaltyBreakdown pb =
                          realized_penalty(traj, path, ctx, opts.use_tail);
                      const auto s = static_cast<std::size_t>(i);
                      out.raw[s] = pb.total_raw();
                      out.conditioned[s] = pb.total_conditioned();
                      out.valid[s] = 1;
                      if (opts.use_tail && !pb.tail_applied)
                        skipped_tail[s] = 1;
                    }
                  });

  for (std::size_t i = 0; i < n; ++i) {
    if (!out.valid[i]) ++out.untriggered;
    if (skipped_tail[i]) ++out.tail_skipped;
  }
  return out;
}

RiskEstimate finish_estimate(const Moments& mom, const EngineOutput& eng,
                             const SimConfig& cfg, long n_paths,
                             Estimator estimator, const McOptions& opts) {
  RiskEstimate est;
  est.mean = mom.mean;
  est.std_error = mom.std_error;
  est.n_paths = n_paths;
  est.estimator = estimator;
  est.tail_corrected = opts.use_tail;
  est.dt = cfg.dt;
  est.seed = cfg.seed;
  est.untriggered = eng.untriggered;
  est.tail_skipped = eng.tail_skipped;
  est.unreliable = static_cast<double>(eng.untriggered) >
                   1e-3 * static_cast<double>(n_paths);
  return est;
}

}  // namespace

RiskEstimate estimate_risk(const Parameters& params, const ThresholdRule& rule,
                           const SimConfig& cfg, long n_paths,
                           Estimator estimator, const McOptions& opts) {
  const EngineOutput eng = run_engine(params, rule, cfg, n_paths, opts);
  const Moments mom = reduce(
      estimator == Estimator::raw ? eng.raw : eng.conditioned, eng.valid);
  return finish_estimate(mom, eng, cfg, n_paths, estimator, opts);
}

EstimatorComparison compare_estimators(const Parameters& params,
                                       const ThresholdRule& rule,
                                       const SimConfig& cfg, long n_paths,
                                       const McOptions& opts) {
  const EngineOutput eng = run_engine(params, rule, cfg, n_paths, opts);
  EstimatorComparison out;
  out.raw = finish_estimate(reduce(eng.raw, eng.valid), eng, cfg, n_paths,
                            Estimator::raw, opts);
  out.conditioned = finish_estimate(reduce(eng.conditioned, eng.valid), eng,
                                    cfg, n_paths, Estimator::conditioned, opts);
  std::vector<double> diff(eng.raw.size(), 0.0);
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = eng.raw[i] - eng.conditioned[i];
  const Moments dm = reduce(diff, eng.valid);
  out.mean_diff = dm.mean;
  out.stderr_diff = dm.std_error;
  return out;
}

SweepResult optimality_sweep(const Parameters& params, const SimConfig& cfg,
                             long n_paths, const std::vector<double>& offsets,
                             const McOptions& opts) {
  params.validate();
  validate_config(params, cfg);
  if (n_paths < 100)
    throw std::invalid_argument("optimality_sweep: n_paths must be >= 100");
  if (std::find(offsets.begin(), offsets.end(), 0.0) == offsets.end())
    throw std::invalid_argument("optimality_sweep: offsets must contain 0");

  const Thresholds thr = solve_thresholds(params, opts.threshold_tol);
  const ValueContext ctx{params, thr};

  SweepResult sweep;
  sweep.offsets = offsets;
  sweep.baseline = thr;
  sweep.cells.resize(offsets.size() * offsets.size());
  std::vector<std::size_t> active;
  for (std::size_t ia = 0; ia < offsets.size(); ++ia) {
    for (std::size_t ib = 0; ib < offsets.size(); ++ib) {
      const std::size_t c = ia * offsets.size() + ib;
      SweepCell& cell = sweep.cells[c];
      cell.da = offsets[ia];
      cell.db = offsets[ib];
      cell.a = thr.a + cell.da;
      cell.b = thr.b + cell.db;
      cell.skipped =
          !(cell.a > 0.0 && cell.a < 1.0 && cell.b > 0.0 && cell.b < 1.0);
      if (!cell.skipped) active.push_back(c);
      if (cell.da == 0.0 && cell.db == 0.0) sweep.baseline_index = c;
    }
  }

  const auto n = static_cast<std::size_t>(n_paths);
  const std::size_t n_active = active.size();
  std::vector<double> totals(n_active * n, 0.0);
  std::vector<unsigned char> valid(n_active * n, 0);
  std::vector<unsigned char> skipped_tail(n_active * n, 0);

  parallel_blocks(
      n_paths, resolve_workers(opts.n_workers), [&](long first, long last) {
        PathSample path;
        std::vector<double> prefix;
        for (long ip = first; ip < last; ++ip) {
          simulate_path(params, cfg, static_cast<std::uint64_t>(ip), path);
          const std::size_t len = path.size();
          prefix.resize(len + 1);
          prefix[0] = 0.0;
          for (std::size_t i = 0; i < len; ++i)
            prefix[i + 1] = prefix[i] + path.m[i];
          const double m_end = path.m[len - 1];
          const int sign_end = (m_end >= 0.0) ? 1 : -1;

          for (std::size_t ci = 0; ci < n_active; ++ci) {
            const SweepCell& cell = sweep.cells[active[ci]];
            std::size_t i0 = 0;
            while (i0 < len && std::abs(path.m[i0]) < cell.a) ++i0;
            if (i0 == len) continue;

            // Same decision semantics as run_rule/realized_penalty, with the
            // occupation integral folded into per-segment prefix sums.
            int cur = (path.m[i0] >= 0.0) ? 1 : -1;
            long switches = 0;
            std::size_t seg_start = i0;
            double cond_acc = 0.0;
            for (std::size_t i = i0; i < len; ++i) {
              if (path.m[i] * cur <= -cell.b) {
                cond_acc += static_cast<double>(i - seg_start) -
                            cur * (prefix[i] - prefix[seg_start]);
                cur = -cur;
                seg_start = i;
                ++switches;
              }
            }
            cond_acc += static_cast<double>((len - 1) - seg_start) -
                        cur * (prefix[len - 1] - prefix[seg_start]);

            double total = params.c0 * path.dt * static_cast<double>(i0) +
                           0.5 * params.c1 * path.dt * cond_acc +
                           params.c2 * static_cast<double>(switches);
            const std::size_t slot = ci * n + static_cast<std::size_t>(ip);
            if (opts.use_tail) {
              if (cur == sign_end)
                total += value_U(ctx, std::abs(m_end), 1);
              else
                skipped_tail[slot] = 1;
            }
            totals[slot] = total;
            valid[slot] = 1;
          }
        }
      });

  std::size_t baseline_ci = 0;
  for (std::size_t ci = 0; ci < n_active; ++ci)
    if (active[ci] == sweep.baseline_index) baseline_ci = ci;

  std::vector<double> diff(n, 0.0);
  std::vector<unsigned char> both(n, 0);
  for (std::size_t ci = 0; ci < n_active; ++ci) {
    SweepCell& cell = sweep.cells[active[ci]];
    const double* cell_totals = totals.data() + ci * n;
    const unsigned char* cell_valid = valid.data() + ci * n;
    const Moments mom = reduce(cell_totals, cell_valid, n);

    long untriggered = 0;
    long tails_dropped = 0;
    for (std::size_t ip = 0; ip < n; ++ip) {
      if (!cell_valid[ip]) ++untriggered;
      if (skipped_tail[ci * n + ip]) ++tails_dropped;
    }

    cell.estimate.mean = mom.mean;
    cell.estimate.std_error = mom.std_error;
    cell.estimate.n_paths = n_paths;
    cell.estimate.estimator = Estimator::conditioned;
    cell.estimate.tail_corrected = opts.use_tail;
    cell.estimate.dt = cfg.dt;
    cell.estimate.seed = cfg.seed;
    cell.estimate.untriggered = untriggered;
    cell.estimate.tail_skipped = tails_dropped;
    cell.estimate.unreliable = static_cast<double>(untriggered) >
                               1e-3 * static_cast<double>(n_paths);

    const double* base_totals = totals.data() + baseline_ci * n;
    const unsigned char* base_valid = valid.data() + baseline_ci * n;
    for (std::size_t ip = 0; ip < n; ++ip) {
      both[ip] = cell_valid[ip] && base_valid[ip];
      diff[ip] = both[ip] ? cell_totals[ip] - base_totals[ip] : 0.0;
    }
    const Moments dm = reduce(diff.data(), both.data(), n);
    cell.mean_diff = dm.mean;
    cell.stderr_diff = dm.std_error;
  }
  return sweep;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "da,db,a,b,skipped,mean,stderr,n_paths,untriggered,mean_diff,"
        "stderr_diff\n";
  for (const SweepCell& cell : sweep.cells) {
    os << format_double(cell.da) << ',' << format_double(cell.db) << ','
       << format_double(cell.a) << ',' << format_double(cell.b) << ','
       << (cell.skipped ? 1 : 0) << ',' << format_double(cell.estimate.mean)
       << ',' << format_double(cell.estimate.std_error) << ','
       << cell.estimate.n_paths << ',' << cell.estimate.untriggered << ','
       << format_double(cell.mean_diff) << ','
       << format_double(cell.stderr_diff) << '\n';
  }
}

}  // namespace driftsign
