#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace driftsign {

struct BisectionResult {
  double x = 0.0;
  double f_at_x = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Bracketing bisection for a continuous f with f(lo) and f(hi) of opposite
/// sign. The bracket is shrunk past xtol all the way to floating-point
/// exhaustion (the midpoint equals an endpoint), so the returned root carries
/// the smallest residual the bracket admits; of the two final endpoints the
/// one with the smaller |f| is returned.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double xtol,
                       int max_iterations = 200) {
  if (!(lo < hi)) throw std::invalid_argument("bisect: requires lo < hi");
  if (!(xtol > 0.0)) throw std::invalid_argument("bisect: requires xtol > 0");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0, true};
  if (fhi == 0.0) return {hi, 0.0, 0, true};
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("bisect: root not bracketed");

  int iterations = 0;
  while (iterations < max_iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, 0.0, iterations, true};
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }

  BisectionResult result;
  result.iterations = iterations;
  result.converged = (hi - lo) <= xtol;
  if (std::abs(flo) <= std::abs(fhi)) {
    result.x = lo;
    result.f_at_x = flo;
  } else {
    result.x = hi;
    result.f_at_x = fhi;
  }
  return result;
}

}  // namespace driftsign
