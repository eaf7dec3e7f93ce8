#include "driftsign/value_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "driftsign/csv.hpp"

namespace driftsign {

namespace {

constexpr double kKinkWindow = 1e-9;
constexpr double kOneLimit = 1e-14;

// Branch constants shared by every evaluation in one context.
struct Consts {
  double mu2, c0, c1, c2, a, b, k, s;
  explicit Consts(const ValueContext& ctx)
      : mu2(ctx.params.mu * ctx.params.mu),
        c0(ctx.params.c0),
        c1(ctx.params.c1),
        c2(ctx.params.c2),
        a(ctx.thresholds.a),
        b(ctx.thresholds.b),
        k(ctx.thresholds.k),
        s(2.0 / (1.0 - ctx.thresholds.b * ctx.thresholds.b)) {}
};

inline double log_ratio(double x) { return std::log((1.0 + x) / (1.0 - x)); }

// U(x, 1) on its principal branch x in (-b, 1].
inline double u_branch(const Consts& c, double x) {
  if (1.0 - x < kOneLimit) return 0.0;
  return c.c1 * (1.0 - x) / (4.0 * c.mu2) * (log_ratio(x) + c.s);
}

inline double du_branch(const Consts& c, double x) {
  return c.c1 / (4.0 * c.mu2) * (-log_ratio(x) + 2.0 / (1.0 + x) - c.s);
}

inline double d2u_branch(const Consts& c, double x) {
  return -c.c1 / (2.0 * c.mu2) *
         (1.0 / (1.0 - x * x) + 1.0 / ((1.0 + x) * (1.0 + x)));
}

// V on its waiting branch |x| < a.
inline double v_branch(const Consts& c, double x) {
  return c.c0 * x / (2.0 * c.mu2) * std::log((1.0 - x) / (1.0 + x)) + c.k;
}

inline double dv_branch(const Consts& c, double x) {
  return c.c0 / (2.0 * c.mu2) * (-log_ratio(x) - 2.0 * x / (1.0 - x * x));
}

inline double d2v_branch(const Consts& c, double x) {
  const double w = 1.0 - x * x;
  return -c.c0 / c.mu2 * (1.0 / w + (1.0 + x * x) / (w * w));
}

inline double gen_factor(double mu2, double x) {
  const double w = 1.0 - x * x;
  return 0.5 * mu2 * w * w;
}

void check_y(int y) {
  if (y != 1 && y != -1)
    throw std::invalid_argument("value function: y must be +1 or -1");
}

double value_U_impl(const Consts& c, double x, int y) {
  if (y == -1) x = -x;
  if (x > -c.b) return u_branch(c, x);
  return u_branch(c, -x) + c.c2;
}

double deriv_U_impl(const Consts& c, double x, int y) {
  double sign = 1.0;
  if (y == -1) {
    x = -x;
    sign = -1.0;
  }
  if (x > -c.b) return sign * du_branch(c, x);
  return -sign * du_branch(c, -x);
}

}  // namespace

ValueContext make_context(const Parameters& params, double tol) {
  return {params, solve_thresholds(params, tol)};
}

double value_U(const ValueContext& ctx, double x, int y) {
  check_y(y);
  if (std::abs(x) > 1.0)
    throw std::domain_error("value_U: |x| must be <= 1");
  return value_U_impl(Consts(ctx), x, y);
}

double value_V(const ValueContext& ctx, double x) {
  if (std::abs(x) > 1.0)
    throw std::domain_error("value_V: |x| must be <= 1");
  const Consts c(ctx);
  if (std::abs(x) >= c.a) return value_U_impl(c, std::abs(x), 1);
  return v_branch(c, x);
}

double deriv_U(const ValueContext& ctx, double x, int y) {
  check_y(y);
  if (std::abs(x) >= 1.0)
    throw std::domain_error("deriv_U: |x| must be < 1");
  return deriv_U_impl(Consts(ctx), x, y);
}

double deriv_V(const ValueContext& ctx, double x) {
  if (std::abs(x) >= 1.0)
    throw std::domain_error("deriv_V: |x| must be < 1");
  const Consts c(ctx);
  if (x >= c.a) return du_branch(c, x);
  if (x <= -c.a) return -du_branch(c, -x);
  return dv_branch(c, x);
}

double generator_apply(const ValueContext& ctx, ValueFn f, double x) {
  if (std::abs(x) >= 1.0)
    throw std::domain_error("generator_apply: |x| must be < 1");
  const Consts c(ctx);
  const double g = gen_factor(c.mu2, x);
  switch (f) {
    case ValueFn::u_plus:
      if (x == -c.b)
        throw std::domain_error(
            "generator_apply: kink point, evaluate one-sided");
      return g * (x > -c.b ? d2u_branch(c, x) : d2u_branch(c, -x));
    case ValueFn::u_minus:
      if (x == c.b)
        throw std::domain_error(
            "generator_apply: kink point, evaluate one-sided");
      return g * (-x > -c.b ? d2u_branch(c, -x) : d2u_branch(c, x));
    case ValueFn::v:
      if (x == c.a || x == -c.a)
        throw std::domain_error(
            "generator_apply: kink point, evaluate one-sided");
      return g * (std::abs(x) < c.a ? d2v_branch(c, x)
                                    : d2u_branch(c, std::abs(x)));
  }
  throw std::invalid_argument("generator_apply: unknown function selector");
}

const char* to_string(PropertyId id) {
  switch (id) {
    case PropertyId::u1: return "U1";
    case PropertyId::u2: return "U2";
    case PropertyId::u3: return "U3";
    case PropertyId::u4: return "U4";
    case PropertyId::v1: return "V1";
    case PropertyId::v2: return "V2";
    case PropertyId::v3: return "V3";
    case PropertyId::v4: return "V4";
    case PropertyId::fit_u_cont: return "fitU_cont";
    case PropertyId::fit_u_smooth: return "fitU_smooth";
    case PropertyId::fit_v_cont: return "fitV_cont";
    case PropertyId::fit_v_smooth: return "fitV_smooth";
  }
  return "?";
}

std::vector<PropertyReport> verify_properties(const ValueContext& ctx,
                                              int grid_size, double tol) {
  if (grid_size < 100)
    throw std::invalid_argument("verify_properties: grid_size must be >= 100");
  if (!(tol > 0.0))
    throw std::invalid_argument("verify_properties: tol must be > 0");
  const Consts c(ctx);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_size) + 26);
  for (int j = 0; j < grid_size; ++j)
    grid.push_back(-1.0 + 2.0 * (j + 0.5) / grid_size);
  // Boundary-approach points for the (1-x^2) f' boundedness scans.
  for (int k = 1; k <= 13; ++k) {
    const double x = 1.0 - std::pow(10.0, -k);
    grid.push_back(x);
    grid.push_back(-x);
  }

  const auto near = [](double x, double point) {
    return std::abs(x - point) <= kKinkWindow;
  };

  std::vector<PropertyReport> reports;
  const auto add = [&](PropertyId id, double violation, double tolerance) {
    reports.push_back({id, grid_size, violation,
                       tolerance, violation <= tolerance});
  };

  // One-sided first derivatives across each branch boundary.
  const double u_fit_smooth = std::abs(du_branch(c, -c.b) + du_branch(c, c.b));
  const double v_fit_smooth = std::abs(dv_branch(c, c.a) - du_branch(c, c.a));
  add(PropertyId::u1, u_fit_smooth, tol);

  // Boundedness of (1-x^2) U'.
  double sup_u = 0.0;
  for (double x : grid) {
    const double w = 1.0 - x * x;
    sup_u = std::max(sup_u, std::abs(w * deriv_U_impl(c, x, 1)));
    sup_u = std::max(sup_u, std::abs(w * deriv_U_impl(c, x, -1)));
  }
  add(PropertyId::u2, sup_u, std::numeric_limits<double>::max());

  // Generator identity and inequality for U.
  double viol_u3 = 0.0;
  for (int y : {1, -1}) {
    const ValueFn fn = (y == 1) ? ValueFn::u_plus : ValueFn::u_minus;
    for (double x : grid) {
      if (near(x, -y * c.b)) continue;
      const double lhs = generator_apply(ctx, fn, x);
      const double target = -0.5 * c.c1 * (1.0 - x * y);
      if (x * y > -c.b)
        viol_u3 = std::max(viol_u3, std::abs(lhs - target));
      else
        viol_u3 = std::max(viol_u3, std::max(0.0, target - lhs));
    }
  }
  add(PropertyId::u3, viol_u3, tol);

  // Switch increment: equals -c2 in the switching region, >= -c2 elsewhere.
  double viol_u4 = 0.0;
  for (int y : {1, -1}) {
    for (double x : grid) {
      if (near(x * y, c.b)) continue;
      const double delta = value_U_impl(c, x, y) - value_U_impl(c, x, -y);
      if (x * y >= c.b)
        viol_u4 = std::max(viol_u4, std::abs(delta + c.c2));
      else
        viol_u4 = std::max(viol_u4, std::max(0.0, -(delta + c.c2)));
    }
  }
  add(PropertyId::u4, viol_u4, tol);

  add(PropertyId::v1, v_fit_smooth, tol);

  double sup_v = 0.0;
  for (double x : grid) {
    const double w = 1.0 - x * x;
    sup_v = std::max(sup_v, std::abs(w * deriv_V(ctx, x)));
  }
  add(PropertyId::v2, sup_v, std::numeric_limits<double>::max());

  double viol_v3 = 0.0;
  for (double x : grid) {
    if (near(x, c.a) || near(x, -c.a)) continue;
    const double lhs = generator_apply(ctx, ValueFn::v, x);
    if (std::abs(x) < c.a)
      viol_v3 = std::max(viol_v3, std::abs(lhs + c.c0));
    else
      viol_v3 = std::max(viol_v3, std::max(0.0, -c.c0 - lhs));
  }
  add(PropertyId::v3, viol_v3, tol);

  double viol_v4 = 0.0;
  for (double x : grid) {
    const double slack = value_U_impl(c, std::abs(x), 1) - value_V(ctx, x);
    viol_v4 = std::max(viol_v4, std::max(0.0, -slack));
  }
  if (!(value_U_impl(c, 0.0, 1) - value_V(ctx, 0.0) > 0.0))
    viol_v4 = std::numeric_limits<double>::infinity();
  add(PropertyId::v4, viol_v4, tol);

  add(PropertyId::fit_u_cont,
      std::abs(u_branch(c, -c.b) - (u_branch(c, c.b) + c.c2)), tol);
  add(PropertyId::fit_u_smooth, u_fit_smooth, tol);
  add(PropertyId::fit_v_cont, std::abs(v_branch(c, c.a) - u_branch(c, c.a)),
      tol);
  add(PropertyId::fit_v_smooth, v_fit_smooth, tol);

  return reports;
}

void write_value_table(std::ostream& os, const ValueContext& ctx, double x_min,
                       double x_max, int n) {
  if (n < 2) throw std::invalid_argument("write_value_table: n must be >= 2");
  if (!(x_min < x_max) || x_min < -1.0 || x_max > 1.0)
    throw std::invalid_argument(
        "write_value_table: grid must satisfy -1 <= x_min < x_max <= 1");
  os << "x,v,u_plus,u_minus\n";
  for (int i = 0; i < n; ++i) {
    const double x = x_min + (x_max - x_min) * i / (n - 1);
    os << format_double(x) << ',' << format_double(value_V(ctx, x)) << ','
       << format_double(value_U(ctx, x, 1)) << ','
       << format_double(value_U(ctx, x, -1)) << '\n';
  }
}

}  // namespace driftsign
