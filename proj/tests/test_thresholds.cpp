#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "driftsign/model.hpp"
#include "driftsign/root_finding.hpp"
#include "driftsign/rng.hpp"
#include "driftsign/thresholds.hpp"
#include "driftsign/value_functions.hpp"

using driftsign::compute_K;
using driftsign::equation_lhs_A;
using driftsign::equation_lhs_B;
using driftsign::Parameters;
using driftsign::solve_A;
using driftsign::solve_B;
using driftsign::solve_thresholds;

namespace {

// High-precision regression fixtures, solved independently with 40-digit
// bisection before this suite was written.
const Parameters kReference{1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 1.5};
constexpr double kReferenceA = 0.368066089793849014729791;
constexpr double kReferenceB = 0.5471726313112125581130281;
constexpr double kReferenceK = 6.009982291673230911005533;

const Parameters kUnit{1.0, 0.5, 1.0, 1.0, 1.0};
constexpr double kUnitA = 0.5133228769159806630626318;
constexpr double kUnitB = 0.7865170376004112318340769;
constexpr double kUnitK = 1.06723109061199553069198;

}  // namespace

TEST_CASE("switching equation LHS: limits, fixture, monotonicity, domain") {
  CHECK(std::abs(equation_lhs_B(1e-8)) < 1e-15);
  CHECK(equation_lhs_B(0.5) ==
        doctest::Approx(0.2347210446652236419380881).epsilon(1e-14));
  CHECK(equation_lhs_B(0.6) > equation_lhs_B(0.5));
  double prev = equation_lhs_B(0.01);
  for (int i = 2; i <= 99; ++i) {
    const double cur = equation_lhs_B(0.01 * i);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(equation_lhs_B(0.999999) > 1e5);
  CHECK_THROWS_AS(equation_lhs_B(0.0), std::domain_error);
  CHECK_THROWS_AS(equation_lhs_B(1.0), std::domain_error);
  CHECK_THROWS_AS(equation_lhs_B(-0.5), std::domain_error);
  CHECK_THROWS_AS(equation_lhs_B(1.5), std::domain_error);
}

TEST_CASE("solve_B reproduces fixtures and the small-c2 limit") {
  CHECK(std::abs(solve_B(kReference, 1e-12) - kReferenceB) < 1e-10);
  CHECK(std::abs(solve_B(kUnit, 1e-12) - kUnitB) < 1e-10);

  Parameters cheap = kReference;
  cheap.c2 = 1e-12;
  CHECK(solve_B(cheap, 1e-12) < 1e-3);
}

TEST_CASE("solve_A reproduces fixtures given the solved B") {
  const double b_ref = solve_B(kReference, 1e-12);
  CHECK(std::abs(solve_A(kReference, b_ref, 1e-12) - kReferenceA) < 1e-10);

  const double b_unit = solve_B(kUnit, 1e-12);
  CHECK(std::abs(solve_A(kUnit, b_unit, 1e-12) - kUnitA) < 1e-10);
}

TEST_CASE("equal boundaries when c1 = 2 c0, fixture instance") {
  const Parameters params{0.7, 0.5, 0.5, 1.0, 1.3};
  const auto thr = solve_thresholds(params, 1e-12);
  CHECK(std::abs(thr.a - thr.b) <= 1e-11);
  CHECK(std::abs(thr.a - 0.73059063092699783466) < 1e-10);
}

TEST_CASE("equal boundaries when c1 = 2 c0, randomized instances") {
  driftsign::Splitmix64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const double mu = 0.1 + 2.9 * rng.uniform01();
    const double c0 = 0.05 + 3.0 * rng.uniform01();
    const double c2 = 0.05 + 4.0 * rng.uniform01();
    const Parameters params{mu, 0.5, c0, 2.0 * c0, c2};
    const auto thr = solve_thresholds(params, 1e-12);
    CHECK(std::abs(thr.a - thr.b) <= 1e-9);
  }
}

TEST_CASE("constant k fixtures and the small-a limit") {
  const auto ref = solve_thresholds(kReference, 1e-12);
  CHECK(std::abs(compute_K(kReference, ref.a, ref.b) - kReferenceK) < 1e-9);
  CHECK(std::abs(ref.k - kReferenceK) < 1e-9);

  const auto unit = solve_thresholds(kUnit, 1e-12);
  CHECK(std::abs(unit.k - kUnitK) < 1e-9);

  const double b = ref.b;
  const double limit = kReference.c1 / (2.0 * kReference.mu * kReference.mu *
                                        (1.0 - b * b));
  CHECK(compute_K(kReference, 1e-13, b) == doctest::Approx(limit).epsilon(1e-9));
}

TEST_CASE("continuous fit of the value branches at the initial boundary") {
  const auto ctx = driftsign::make_context(kReference, 1e-12);
  const double a = ctx.thresholds.a;
  CHECK(std::abs(driftsign::value_V(ctx, std::nextafter(a, 0.0)) -
                 driftsign::value_U(ctx, a, +1)) < 1e-10);
}

TEST_CASE("solved boundaries sit strictly inside the unit interval") {
  driftsign::Splitmix64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const Parameters params{0.1 + 2.9 * rng.uniform01(), 0.5,
                            0.05 + 3.0 * rng.uniform01(),
                            0.05 + 3.0 * rng.uniform01(),
                            0.05 + 4.0 * rng.uniform01()};
    const auto thr = solve_thresholds(params, 1e-12);
    CHECK(thr.a > 0.0);
    CHECK(thr.a < 1.0);
    CHECK(thr.b > 0.0);
    CHECK(thr.b < 1.0);
    CHECK(std::abs(thr.residual_a) < 1e-10);
    CHECK(std::abs(thr.residual_b) < 1e-10);
  }
}

TEST_CASE("any valid starting bracket yields the same root") {
  const double rhs = 2.0 * kReference.mu * kReference.mu * kReference.c2 /
                     kReference.c1;
  auto f = [&](double b) { return equation_lhs_B(b) - rhs; };
  const double root = solve_B(kReference, 1e-12);
  driftsign::Splitmix64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const double lo = root * rng.uniform01();
    const double hi = root + (1.0 - root) * (0.05 + 0.95 * rng.uniform01());
    const auto r = driftsign::bisect(f, std::max(lo, 1e-15), hi, 1e-12);
    CHECK(std::abs(r.x - root) < 1e-10);
  }
}

TEST_CASE("switching boundary moves with the costs") {
  for (double c2 : {0.5, 1.0, 2.0}) {
    Parameters lo = kReference;
    lo.c2 = c2;
    Parameters hi = kReference;
    hi.c2 = c2 + 0.25;
    CHECK(solve_B(hi, 1e-12) > solve_B(lo, 1e-12));
  }
  for (double c1 : {0.5, 1.0, 2.0}) {
    Parameters lo = kReference;
    lo.c1 = c1;
    Parameters hi = kReference;
    hi.c1 = c1 + 0.25;
    CHECK(solve_B(hi, 1e-12) < solve_B(lo, 1e-12));
  }
}
