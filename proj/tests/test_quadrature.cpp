#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "cylstats/quadrature.hpp"
#include "oracle.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cylstats::ConvergenceError;
using cylstats::QuadratureConfig;

TEST_CASE("config validation rejects bad tolerances") {
  QuadratureConfig config;
  config.abs_tol = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = {};
  config.rel_tol = -1e-8;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = {};
  config.max_subdivisions = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("integrates elementary functions") {
  CHECK_THAT(cylstats::integrate([](double t) { return std::cos(t); }, 0.0,
                                 std::numbers::pi),
             WithinAbs(0.0, 1e-12));
  CHECK_THAT(cylstats::integrate([](double x) { return x * x; }, 0.0, 1.0),
             WithinRel(1.0 / 3.0, 1e-12));
  CHECK_THAT(cylstats::integrate([](double x) { return std::exp(-x * x); },
                                 -6.0, 6.0),
             WithinRel(std::sqrt(std::numbers::pi), 1e-10));
}

TEST_CASE("empty and reversed intervals") {
  auto f = [](double x) { return std::sin(x) + 2.0; };
  CHECK(cylstats::integrate(f, 1.0, 1.0) == 0.0);
  CHECK_THAT(cylstats::integrate(f, 2.0, 0.0),
             WithinRel(-cylstats::integrate(f, 0.0, 2.0), 1e-12));
}

TEST_CASE("semi-infinite transform reproduces known integrals") {
  CHECK_THAT(cylstats::integrate_semi_infinite(
                 [](double x) { return std::exp(-x); }, 0.0),
             WithinRel(1.0, 1e-10));
  // Gamma(3) = 2 with a scale hint near the integrand's mass.
  CHECK_THAT(cylstats::integrate_semi_infinite(
                 [](double x) { return x * x * std::exp(-x); }, 0.0, {}, 2.0),
             WithinRel(2.0, 1e-10));
  // Shifted lower endpoint: int_1^inf e^{-x} dx = e^{-1}.
  CHECK_THAT(cylstats::integrate_semi_infinite(
                 [](double x) { return std::exp(-x); }, 1.0),
             WithinRel(std::exp(-1.0), 1e-10));
}

TEST_CASE("agrees with the reference integrator on oscillatory integrands") {
  auto f = [](double x) { return std::sin(7.0 * x) * std::exp(-0.5 * x); };
  const double expected = oracle::integrate(f, 0.0, 10.0);
  CHECK_THAT(cylstats::integrate(f, 0.0, 10.0), WithinAbs(expected, 1e-10));
}

TEST_CASE("tolerance is honored at two settings") {
  auto f = [](double x) { return std::exp(-x) * std::cos(5.0 * x); };
  const double exact = (1.0 / 26.0) * (1.0 - std::exp(-4.0) *
                                                 (std::cos(20.0) -
                                                  5.0 * std::sin(20.0)));
  QuadratureConfig loose;
  loose.abs_tol = loose.rel_tol = 1e-6;
  QuadratureConfig tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  CHECK_THAT(cylstats::integrate(f, 0.0, 4.0, loose), WithinAbs(exact, 1e-5));
  CHECK_THAT(cylstats::integrate(f, 0.0, 4.0, tight), WithinAbs(exact, 1e-11));
}

TEST_CASE("subdivision cap raises a distinct error") {
  QuadratureConfig config;
  config.max_subdivisions = 3;
  config.abs_tol = config.rel_tol = 1e-14;
  auto nasty = [](double x) { return std::sin(200.0 * x) * std::sin(201.0 * x); };
  CHECK_THROWS_AS(cylstats::integrate(nasty, 0.0, 30.0, config),
                  ConvergenceError);
}

TEST_CASE("non-finite endpoints are rejected") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(
      cylstats::integrate(f, 0.0, std::numeric_limits<double>::infinity()),
      std::invalid_argument);
  CHECK_THROWS_AS(cylstats::integrate_semi_infinite(
                      f, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}
