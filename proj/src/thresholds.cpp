#include "driftsign/thresholds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "driftsign/root_finding.hpp"

namespace driftsign {

namespace {
constexpr double kBracketEps = 1e-15;

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream msg;
    msg << name << ": argument must lie in (0,1), got " << v;
    throw std::domain_error(msg.str());
  }
}
}  // namespace

double equation_lhs_B(double b) {
  check_unit_interval(b, "equation_lhs_B");
  return std::log((1.0 - b) / (1.0 + b)) + 2.0 * b / (1.0 - b * b);
}

double equation_lhs_A(double a, double c0, double c1) {
  check_unit_interval(a, "equation_lhs_A");
  const double r = c1 / (2.0 * c0);
  return (r - 1.0) * std::log((1.0 - a) / (1.0 + a)) +
         (2.0 / (1.0 + a)) * (r + a / (1.0 - a));
}

double solve_B(const Parameters& params, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("solve_B: tol must be > 0");
  const double rhs = 2.0 * params.mu * params.mu * params.c2 / params.c1;
  const auto result = bisect([rhs](double b) { return equation_lhs_B(b) - rhs; },
                             kBracketEps, 1.0 - kBracketEps, tol);
  return result.x;
}

double solve_A(const Parameters& params, double b, double tol) {
  params.validate();
  check_unit_interval(b, "solve_A");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_A: tol must be > 0");
  const double rhs = params.c1 / (params.c0 * (1.0 - b * b));
  const double c0 = params.c0;
  const double c1 = params.c1;
  try {
    const auto result =
        bisect([rhs, c0, c1](double a) { return equation_lhs_A(a, c0, c1) - rhs; },
               kBracketEps, 1.0 - kBracketEps, tol);
    return result.x;
  } catch (const std::invalid_argument&) {
    std::ostringstream msg;
    msg << "solve_A: initial-boundary equation not bracketed on (0,1) for "
        << "mu=" << params.mu << " c0=" << c0 << " c1=" << c1
        << " c2=" << params.c2 << " b=" << b;
    throw std::runtime_error(msg.str());
  }
}

double compute_K(const Parameters& params, double a, double b) {
  const double mu2 = params.mu * params.mu;
  return (params.c1 * (1.0 - a) / (4.0 * mu2) + params.c0 * a / (2.0 * mu2)) *
             std::log((1.0 + a) / (1.0 - a)) +
         params.c1 * (1.0 - a) / (2.0 * mu2 * (1.0 - b * b));
}

Thresholds solve_thresholds(const Parameters& params, double tol) {
  Thresholds out;
  out.b = solve_B(params, tol);
  out.a = solve_A(params, out.b, tol);
  out.k = compute_K(params, out.a, out.b);
  const double rhs_b = 2.0 * params.mu * params.mu * params.c2 / params.c1;
  const double rhs_a = params.c1 / (params.c0 * (1.0 - out.b * out.b));
  out.residual_b = equation_lhs_B(out.b) - rhs_b;
  out.residual_a = equation_lhs_A(out.a, params.c0, params.c1) - rhs_a;
  return out;
}

}  // namespace driftsign
