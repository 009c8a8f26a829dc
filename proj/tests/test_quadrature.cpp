#include "doctest.h"

#include <cmath>

#include "qgls/quadrature.hpp"

using namespace qgls;

TEST_CASE("finite panels on smooth integrands") {
  const quad::Result r =
      quad::integrate_finite([](double x) { return x * x; }, 0.0, 1.0, 1e-13);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("integrable endpoint singularity") {
  const quad::Result r = quad::integrate_finite(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("jump discontinuities converge under bisection") {
  const quad::Result r = quad::integrate_finite(
      [](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0.0, 1.0, 1e-9);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.7).epsilon(1e-9));
}

TEST_CASE("decaying tails truncate with certified remainder") {
  const quad::TailResult r1 = quad::integrate_decaying(
      [](double t) { return std::exp(-t); }, 0.0, 1e-11, 40.0);
  CHECK(!r1.divergent);
  CHECK(r1.res.converged);
  CHECK(r1.res.value == doctest::Approx(1.0).epsilon(1e-10));

  const quad::TailResult r2 = quad::integrate_decaying(
      [](double t) { return t * t * t * std::exp(-t); }, 0.0, 1e-11, 60.0);
  CHECK(r2.res.value == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("growth rule flags divergent integrands") {
  const quad::TailResult exp_growth = quad::integrate_decaying(
      [](double t) { return std::exp(0.1 * t); }, 0.0, 1e-9, 16.0);
  CHECK(exp_growth.divergent);
  CHECK(std::isinf(exp_growth.res.value));

  const quad::TailResult harmonic = quad::integrate_decaying(
      [](double t) { return 1.0 / (1.0 + t); }, 0.0, 1e-9, 16.0);
  CHECK(harmonic.divergent);
}
