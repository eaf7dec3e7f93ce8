#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "driftsign/root_finding.hpp"

using driftsign::bisect;

TEST_CASE("bisection finds sqrt(2) to full precision") {
  const auto r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.x - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(r.f_at_x) < 1e-11);
}

TEST_CASE("bisection locates the cosine root at pi/2") {
  const auto r = bisect([](double x) { return std::cos(x); }, 0.0, 3.0, 1e-13);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(std::acos(0.0)).epsilon(1e-14));
}

TEST_CASE("an exact zero at an endpoint or midpoint returns immediately") {
  const auto lo = bisect([](double x) { return x; }, 0.0, 1.0, 1e-12);
  CHECK(lo.x == 0.0);
  CHECK(lo.iterations == 0);
  CHECK(lo.converged);

  const auto hi = bisect([](double x) { return x - 1.0; }, 0.0, 1.0, 1e-12);
  CHECK(hi.x == 1.0);
  CHECK(hi.iterations == 0);

  const auto mid = bisect([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-12);
  CHECK(mid.x == 0.5);
  CHECK(mid.f_at_x == 0.0);
  CHECK(mid.converged);
}

TEST_CASE("invalid brackets and tolerances are rejected") {
  auto f = [](double x) { return x - 0.5; };
  CHECK_THROWS_AS(bisect(f, 1.0, 0.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(bisect(f, 1.0, 1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(bisect(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bisect(f, 0.0, 1.0, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(bisect([](double x) { return x + 2.0; }, 0.0, 1.0, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("the bracket is shrunk to floating-point exhaustion") {
  const auto r = bisect([](double x) { return std::expm1(x) - 1.0; }, 0.0,
                        10.0, 1e-12, 200);
  CHECK(r.converged);
  CHECK(std::abs(r.x - std::log(2.0)) <= 4 * 1e-16);
  CHECK(r.iterations < 70);
}

TEST_CASE("a decreasing function brackets just as well") {
  const auto r = bisect([](double x) { return 1.0 - x * x * x; }, 0.25, 4.0,
                        1e-12);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("the iteration cap leaves the best endpoint, flagged unconverged") {
  const auto r =
      bisect([](double x) { return x - 0.123456; }, 0.0, 1.0, 1e-12, 5);
  CHECK(r.iterations == 5);
  CHECK_FALSE(r.converged);
  CHECK(std::abs(r.x - 0.123456) < 0.05);
}
