#include "doctest.h"

#include <cmath>

#include "qgls/psi.hpp"

using namespace qgls;

TEST_CASE("generator evaluation per kind") {
  const PsiFunction iw = PsiFunction::iwaniec_sbordone(1.0, 0.05, 0.5);
  CHECK(iw(0.25) == doctest::Approx(256.0).epsilon(1e-13));  // (0.25)^{-4}

  const PsiFunction c = PsiFunction::constant(1.0, 0.25, 0.5);
  CHECK(c(0.3) == 1.0);
  CHECK(c(0.49) == 1.0);

  const PsiFunction band = PsiFunction::bandaliyev(1.0);  // (b/2, b) = (0.5, 1)
  const double expected = std::pow(0.25, -4.0 / 3.0);
  CHECK(band(0.75) == doctest::Approx(expected).epsilon(1e-13));

  const PsiFunction tm = PsiFunction::tail_model(0.5, 0.0);
  CHECK(tm(0.25) == doctest::Approx(16.0).epsilon(1e-13));  // (0.25)^{-2}

  CHECK_THROWS_AS(iw(0.5), DomainError);
  CHECK_THROWS_AS(iw(0.05), DomainError);
  CHECK_THROWS_AS(iw(0.7), DomainError);
}

TEST_CASE("extrema caches agree with fine grid scans") {
  const std::vector<PsiFunction> zoo = {
      PsiFunction::constant(2.5, 0.25, 0.5),
      PsiFunction::iwaniec_sbordone(0.0, 0.25, 0.5),
      PsiFunction::iwaniec_sbordone(1.0, 0.05, 0.5),   // interior minimum
      PsiFunction::iwaniec_sbordone(0.5, 0.1, 1.0),    // increasing, b = 1
      PsiFunction::bandaliyev(0.5),
      PsiFunction::tail_model(0.5, 1.0, SlowlyVarying::log_power(1.0)),
  };
  for (const PsiFunction& psi : zoo) {
    double grid_min = kInf;
    const double a = psi.lower(), b = psi.upper();
    for (int k = 0; k <= 2000; ++k) {
      const double p = a + (b - a) * (k + 0.5) / 2001.0;
      grid_min = std::min(grid_min, psi(p));
    }
    CHECK(psi.inf_psi() > 0.0);
    CHECK(grid_min >= psi.inf_psi() * (1.0 - 1e-9));
    CHECK(grid_min <= psi.inf_psi() * (1.0 + 1e-2));  // grid approaches the inf
  }
}

TEST_CASE("u-shape of the singular family when b < 1") {
  const PsiFunction psi = PsiFunction::iwaniec_sbordone(1.0, 0.05, 0.5);
  // large at both ends, smaller in the middle
  CHECK(psi(0.06) > psi(0.25));
  CHECK(psi(0.49) > psi(0.25));
  CHECK(psi.sup_psi() == kInf);
}

TEST_CASE("tabulated generators interpolate log-linearly in 1/p") {
  // nodes sampled from s^{1/p}: interpolation in 1/p must reproduce it
  const double s = 2.0;
  std::vector<double> nodes{0.26, 0.30, 0.35, 0.42, 0.49};
  std::vector<double> values;
  for (double p : nodes) values.push_back(std::pow(s, 1.0 / p));
  const PsiFunction tab = PsiFunction::tabulated(
      nodes, values, 0.25, 0.5, PsiFunction::TabulatedEnds::Extend);
  for (double p : {0.27, 0.33, 0.4, 0.26, 0.495}) {
    CHECK(tab(p) == doctest::Approx(std::pow(s, 1.0 / p)).epsilon(1e-13));
  }
  // extension beyond the node range stays exact for this family
  CHECK(tab(0.2501) == doctest::Approx(std::pow(s, 1.0 / 0.2501)).epsilon(1e-12));

  const PsiFunction clamp = PsiFunction::tabulated(
      nodes, values, 0.25, 0.5, PsiFunction::TabulatedEnds::Clamp);
  CHECK(clamp(0.2501) == doctest::Approx(values.front()).epsilon(1e-13));
  CHECK(clamp(0.4999) == doctest::Approx(values.back()).epsilon(1e-13));
}

TEST_CASE("tabulated validation") {
  CHECK_THROWS_AS(PsiFunction::tabulated({0.3}, {1.0}, 0.25, 0.5), DomainError);
  CHECK_THROWS_AS(PsiFunction::tabulated({0.3, 0.2}, {1.0, 1.0}, 0.25, 0.5),
                  DomainError);
  CHECK_THROWS_AS(PsiFunction::tabulated({0.3, 0.4}, {1.0, 0.0}, 0.25, 0.5),
                  DomainError);
  CHECK_THROWS_AS(PsiFunction::tabulated({0.1, 0.4}, {1.0, 1.0}, 0.25, 0.5),
                  DomainError);  // node outside (a,b)
}

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(PsiFunction::constant(1.0, 0.5, 0.25), DomainError);
  CHECK_THROWS_AS(PsiFunction::constant(1.0, 0.25, 1.5), DomainError);
  CHECK_THROWS_AS(PsiFunction::constant(0.0, 0.25, 0.5), DomainError);
  CHECK_THROWS_AS(PsiFunction::iwaniec_sbordone(1.0, 0.0, 0.5), DomainError);
  // the tail-model window starts at 0 by construction
  CHECK(PsiFunction::tail_model(0.5, 0.0).lower() == 0.0);
}
