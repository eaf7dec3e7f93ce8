#pragma once

#include "driftsign/model.hpp"

namespace driftsign {

/// Solved decision boundaries for one problem instance.
///
/// a: initial-decision boundary (decide once |M| reaches a).
/// b: switching boundary (reverse the decision once M crosses -b times the
///    current decision sign).
/// k: additive constant of the waiting-region value function.
/// residual_a, residual_b: signed residuals of the two defining equations at
/// the returned roots.
struct Thresholds {
  double a = 0.0;
  double b = 0.0;
  double k = 0.0;
  double residual_a = 0.0;
  double residual_b = 0.0;
};

/// Left side of the switching-boundary equation,
///   ln((1-b)/(1+b)) + 2b/(1-b^2),
/// strictly increasing on (0,1) from 0 to infinity. Throws std::domain_error
/// outside (0,1).
double equation_lhs_B(double b);

/// Left side of the initial-boundary equation in the grouping
///   (c1/(2 c0) - 1) ln((1-a)/(1+a)) + (2/(1+a)) (c1/(2 c0) + a/(1-a)).
/// Throws std::domain_error outside (0,1).
double equation_lhs_A(double a, double c0, double c1);

/// Root of equation_lhs_B(b) = 2 mu^2 c2 / c1 on (0,1).
double solve_B(const Parameters& params, double tol = 1e-12);

/// Root of equation_lhs_A(a) = c1 / (c0 (1 - b^2)) on (0,1), given the solved
/// switching boundary b. A failed bracket is an internal-consistency error and
/// surfaces as std::runtime_error with the instance values.
double solve_A(const Parameters& params, double b, double tol = 1e-12);

/// Value-function constant
///   K = (c1(1-a)/(4 mu^2) + c0 a/(2 mu^2)) ln((1+a)/(1-a))
///       + c1(1-a)/(2 mu^2 (1-b^2)).
double compute_K(const Parameters& params, double a, double b);

/// Solve both boundary equations and the constant for one instance.
Thresholds solve_thresholds(const Parameters& params, double tol = 1e-12);

}  // namespace driftsign
