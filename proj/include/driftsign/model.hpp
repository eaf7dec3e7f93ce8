#pragma once

#include <cmath>
#include <stdexcept>

namespace driftsign {

/// One problem instance: signal magnitude, prior, and the three cost rates.
///
/// The observed process is X_t = mu * theta * t + W_t with theta in {-1, +1}
/// hidden, P(theta = +1) = p, and W a standard Brownian motion. Costs: c0 per
/// unit time until the initial decision, c1 per unit time spent under a wrong
/// decision, c2 per decision reversal.
struct Parameters {
  double mu = 1.0;
  double p = 0.5;
  double c0 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;

  void validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("Parameters: mu must be > 0");
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("Parameters: p must lie in [0, 1]");
    if (!(c0 > 0.0)) throw std::invalid_argument("Parameters: c0 must be > 0");
    if (!(c1 > 0.0)) throw std::invalid_argument("Parameters: c1 must be > 0");
    if (!(c2 > 0.0)) throw std::invalid_argument("Parameters: c2 must be > 0");
  }
};

/// Posterior mean of the drift sign, always in [-1, 1].
struct Belief {
  double m = 0.0;
};

inline Belief initial_belief(const Parameters& params) {
  return {2.0 * params.p - 1.0};
}

/// Posterior mean of the drift sign given the observation X_t = x:
///   M = 1 - 2(1-p) / (p e^{2 mu x} + 1 - p).
///
/// Evaluated in a branch-split form so e^{2 mu x} is never formed for large
/// positive x; the result saturates to +/-1 instead of overflowing. Degenerate
/// priors p = 0 and p = 1 are frozen at -1 and +1.
inline Belief posterior_mean(const Parameters& params, double x) {
  if (params.p <= 0.0) return {-1.0};
  if (params.p >= 1.0) return {1.0};
  if (x == 0.0) return initial_belief(params);
  const double q = 1.0 - params.p;
  if (x > 0.0) {
    const double f = std::exp(-2.0 * params.mu * x);
    return {(params.p - q * f) / (params.p + q * f)};
  }
  const double e = std::exp(2.0 * params.mu * x);
  return {(params.p * e - q) / (params.p * e + q)};
}

/// A two-drift testing problem (drift mu1 vs mu2) recentred to the +/-mu form.
struct CenteredDrift {
  double mu = 0.0;
  double value = 0.0;
};

/// Reduce an observation of a process with drift either mu1 or mu2 to the
/// centered problem: subtract the average drift, keep half the separation.
inline CenteredDrift center_two_drift_problem(double mu1, double mu2,
                                              double path_value, double t) {
  if (mu1 == mu2)
    throw std::invalid_argument(
        "center_two_drift_problem: drifts coincide, hypotheses are "
        "indistinguishable");
  return {std::abs(mu1 - mu2) / 2.0, path_value - 0.5 * (mu1 + mu2) * t};
}

}  // namespace driftsign
