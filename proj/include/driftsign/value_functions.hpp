#pragma once

#include <iosfwd>
#include <vector>

#include "driftsign/model.hpp"
#include "driftsign/thresholds.hpp"

namespace driftsign {

/// Parameters together with their solved thresholds; the unit every value
/// evaluation needs.
struct ValueContext {
  Parameters params;
  Thresholds thresholds;
};

ValueContext make_context(const Parameters& params, double tol = 1e-12);

/// Expected remaining cost after the initial decision, as a function of the
/// current belief x and the current decision y (+1 or -1):
///   U(x, 1)  = c1(1-x)/(4 mu^2) (ln((1+x)/(1-x)) + 2/(1-b^2))   for x > -b,
///   U(x, 1)  = U(-x, 1) + c2                                    for x <= -b,
///   U(x, -1) = U(-x, 1).
/// The (1-x) ln((1+x)/(1-x)) product is taken as its limit 0 when x is within
/// 1e-14 of 1. Throws std::domain_error for |x| > 1 and std::invalid_argument
/// for y not in {-1, +1}.
double value_U(const ValueContext& ctx, double x, int y);

/// Expected total cost before any decision has been made, as a function of
/// the current belief x:
///   V(x) = c0 x/(2 mu^2) ln((1-x)/(1+x)) + k   for |x| < a,
///   V(x) = U(|x|, 1)                           for |x| >= a.
/// Throws std::domain_error for |x| > 1.
double value_V(const ValueContext& ctx, double x);

/// Closed-form first derivatives of the active branch. At a branch point the
/// two one-sided values agree (smooth fit). Throws std::domain_error for
/// |x| >= 1.
double deriv_U(const ValueContext& ctx, double x, int y);
double deriv_V(const ValueContext& ctx, double x);

enum class ValueFn { u_plus, u_minus, v };

/// Generator of the belief diffusion applied to a value function:
///   L f(x) = (mu^2 / 2) (1 - x^2)^2 f''(x),
/// using the closed-form second derivative of the active branch. Throws
/// std::domain_error when x sits exactly on a second-derivative kink (-b for
/// u_plus, +b for u_minus, +/-a for v) or when |x| >= 1; probe one-sided
/// instead.
double generator_apply(const ValueContext& ctx, ValueFn f, double x);

enum class PropertyId {
  u1,
  u2,
  u3,
  u4,
  v1,
  v2,
  v3,
  v4,
  fit_u_cont,
  fit_u_smooth,
  fit_v_cont,
  fit_v_smooth,
};

const char* to_string(PropertyId id);

struct PropertyReport {
  PropertyId property_id;
  int grid_size = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Numerical check of the structural properties of U and V on a grid:
///   u1/v1: one-sided first derivatives match at the kinks (C^1 fit);
///   u2/v2: (1-x^2) f'(x) stays bounded toward +/-1 (max_violation records
///          the observed supremum, tolerance is the largest finite double);
///   u3/v3: generator identities, equality inside the active region and
///          one-sided slack outside;
///   u4:    the switch increment U(x,y) - U(x,-y) equals -c2 in the switching
///          region and stays >= -c2 elsewhere;
///   v4:    V <= U(|.|, 1) everywhere, strictly at 0;
///   fit_*: value and derivative matching across each branch boundary.
/// Kink neighbourhoods of half-width 1e-9 are excluded from two-sided grid
/// scans and covered by one-sided evaluation instead. Failures are reported,
/// never thrown. Requires grid_size >= 100.
std::vector<PropertyReport> verify_properties(const ValueContext& ctx,
                                              int grid_size, double tol);

/// CSV table (x, v, u_plus, u_minus) on a uniform grid, for plotting.
void write_value_table(std::ostream& os, const ValueContext& ctx, double x_min,
                       double x_max, int n);

}  // namespace driftsign
