#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qgls/gls.hpp"

using namespace qgls;

TEST_CASE("norm of an indicator in a flat-generator space") {
  // sup_p m^{1/p} over (0.25, 0.5) is attained in the limit p -> b
  const FunctionRep f = FunctionRep::indicator({{0.0, 0.5}});
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const GlsNormResult r = gls_norm(f, psi);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r.endpoint_limit);
  CHECK(!r.divergent);
  for (const auto& [p, ratio] : r.profile) CHECK(ratio <= r.value * (1.0 + 1e-12));
}

TEST_CASE("the zero function has norm zero") {
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  CHECK(gls_norm(FunctionRep::zero(), psi).value == 0.0);
}

TEST_CASE("membership failure is reported as divergence") {
  // ||x^{-2}||_p is infinite beyond p = 1/2, so a window past it diverges
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.75);
  const GlsNormResult r = gls_norm(f, psi);
  CHECK(r.divergent);
  CHECK(std::isinf(r.value));
}

TEST_CASE("natural generator nodes match the closed form") {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const PsiFunction nat = natural_function(f, 0.05, 0.45, 33);
  for (std::size_t k = 0; k < nat.p_nodes().size(); ++k) {
    const double p = nat.p_nodes()[k];
    const double expected = std::pow(1.0 - 2.0 * p, -1.0 / p);
    CHECK(std::exp(nat.log_values()[k]) ==
          doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("natural normalization across representations") {
  struct Case {
    FunctionRep f;
    double a, b;
  };
  const std::vector<Case> corpus = {
      {FunctionRep::power_log({2.0, 0.0}), 0.05, 0.45},
      {FunctionRep::power_log({2.0, 1.0}), 0.05, 0.45},
      {FunctionRep::power_log({1.5, 0.5, SlowlyVarying::log_power(1.0)}), 0.05, 0.6},
      {FunctionRep::indicator({{0.0, 0.3}}), 0.25, 0.75},
      {FunctionRep::sampled({0.1, 0.4, 0.7}, {2.0, 0.5, 3.0}), 0.2, 0.9},
  };
  for (const Case& c : corpus) {
    const PsiFunction nat = natural_function(c.f, c.a, c.b);
    const GlsNormResult r = gls_norm(c.f, nat);
    CHECK(std::abs(r.value - 1.0) <= 1e-6);
  }
}

TEST_CASE("natural generator rejects divergent windows and the zero function") {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  CHECK_THROWS_AS(natural_function(f, 0.25, 0.75), NormDivergent);
  CHECK_THROWS_AS(natural_function(FunctionRep::zero(), 0.25, 0.5), DomainError);
}

TEST_CASE("gamma-asymptotics of the singular family's natural generator") {
  // With L == 1 the norm is Gamma(p delta + 1)^{1/p} (1 - p Delta)^{-delta - 1/p}
  // exactly, so the tabulated/formula ratio is 1 at every node.
  const double Delta = 2.0, delta = 1.0;
  const FunctionRep f = FunctionRep::power_log({Delta, delta});
  const PsiFunction nat = natural_function(f, 0.05, 1.0 / Delta, 65);
  for (std::size_t k = 0; k < nat.p_nodes().size(); ++k) {
    const double p = nat.p_nodes()[k];
    const double formula = std::pow(std::tgamma(p * delta + 1.0), 1.0 / p) *
                           std::pow(1.0 - p * Delta, -delta - 1.0 / p);
    const double ratio = std::exp(nat.log_values()[k]) / formula;
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-7));
  }
  // With a slowly varying factor the ratio drifts to a constant as p -> 1/Delta.
  const FunctionRep g =
      FunctionRep::power_log({Delta, delta, SlowlyVarying::log_power(1.0)});
  const PsiFunction nat_g = natural_function(g, 0.05, 1.0 / Delta, 65);
  const SlowlyVarying L = SlowlyVarying::log_power(1.0);
  double prev_gap = kInf;
  double final_ratio = 0.0;
  for (std::size_t k = 0; k < nat_g.p_nodes().size(); ++k) {
    const double p = nat_g.p_nodes()[k];
    const double formula = std::pow(std::tgamma(p * delta + 1.0), 1.0 / p) *
                           L(1.0 / (1.0 - p * Delta)) *
                           std::pow(1.0 - p * Delta, -delta - 1.0 / p);
    final_ratio = std::exp(nat_g.log_values()[k]) / formula;
    if (k + 8 > nat_g.p_nodes().size()) {  // deep endpoint regime
      CHECK(std::abs(final_ratio - 1.0) <= prev_gap + 1e-12);
      prev_gap = std::abs(final_ratio - 1.0);
    }
  }
  CHECK(std::abs(final_ratio - 1.0) <= 0.1);
}

TEST_CASE("fundamental function values and bounds") {
  const PsiFunction flat = PsiFunction::constant(1.0, 0.25, 0.5);
  CHECK(fundamental_function(flat, 0.25) == doctest::Approx(0.0625).epsilon(1e-6));
  CHECK(fundamental_function(flat, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fundamental_function(flat, 0.0) == 0.0);
  CHECK_THROWS_AS(fundamental_function(flat, 1.5), DomainError);
  CHECK_THROWS_AS(fundamental_function(flat, -0.1), DomainError);

  std::vector<double> deltas;
  for (int k = 1; k <= 10; ++k) deltas.push_back(k / 10.0);

  const FundamentalBoundsReport flat_report = fundamental_bounds_check(flat, deltas);
  CHECK(flat_report.all_hold);
  for (const auto& row : flat_report.rows) {
    CHECK(row.left_checked);  // sup psi = 1 finite
    CHECK(row.phi == doctest::Approx(row.right_bound).epsilon(1e-6));
  }

  const PsiFunction iw = PsiFunction::iwaniec_sbordone(1.0, 0.25, 0.5);
  const FundamentalBoundsReport iw_report = fundamental_bounds_check(iw, deltas);
  CHECK(iw_report.all_hold);
  for (const auto& row : iw_report.rows) CHECK(!row.left_checked);  // sup = inf

  double prev = -1.0;
  for (const auto& row : iw_report.rows) {
    CHECK(row.phi >= prev);
    prev = row.phi;
  }
}

TEST_CASE("dilation exponents for a flat generator") {
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const FunctionRep probe =
      FunctionRep::indicator({{0.0, 1.0}}, MeasureSpace::half_line());
  std::vector<double> s_grid{1.0};  // excluded identity point
  for (int k = 4; k <= 10; ++k) {
    s_grid.push_back(std::pow(2.0, -k));
    s_grid.push_back(std::pow(2.0, k));
  }
  const BoydEstimate est = boyd_indices(psi, probe, s_grid);
  CHECK(est.gamma1 == doctest::Approx(2.0).epsilon(0.02));
  CHECK(est.gamma2 == doctest::Approx(4.0).epsilon(0.02));
  CHECK(est.gamma1 <= est.gamma2);
  // single-probe lower bounds stay on the fitted curve up to the residual gate
  for (const BoydEstimate::Fit* fit : {&est.small_s, &est.large_s}) {
    const double spread =
        *std::max_element(fit->log_ratio.begin(), fit->log_ratio.end()) -
        *std::min_element(fit->log_ratio.begin(), fit->log_ratio.end());
    for (std::size_t i = 0; i < fit->log_s.size(); ++i) {
      const double fitted = fit->slope * fit->log_s[i] + fit->intercept;
      CHECK(fit->log_ratio[i] <= fitted + 0.05 * spread + 1e-12);
    }
  }
}

TEST_CASE("dilation regression refuses non-asymptotic grids") {
  // A probe with mass > 1 puts a slope kink at s = 1/mass inside the fitted
  // range, which the residual gate must catch.
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const FunctionRep probe =
      FunctionRep::indicator({{0.0, 4.0}}, MeasureSpace::half_line());
  const std::vector<double> s_grid{0.1, 0.3, 0.6, 2.0, 4.0, 8.0};
  CHECK_THROWS_AS(boyd_indices(psi, probe, s_grid), InsufficientDecay);
}

TEST_CASE("equal-measure partition demonstration") {
  const FunctionRep f = FunctionRep::indicator({{0.0, 1.0}});
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const CollapseReport report = collapse_demo(f, psi, {1, 2, 4, 8, 16});
  CHECK(report.bounds_hold);
  CHECK(report.max_reconstruction_error <= 1e-12);
  CHECK(report.f_gls_norm == doctest::Approx(1.0).epsilon(1e-9));
  // pieces scale like n^{1-1/b} = 1/n for b = 1/2
  for (std::size_t k = 0; k < report.n_values.size(); ++k) {
    const double n = static_cast<double>(report.n_values[k]);
    CHECK(report.max_piece_norms[k] == doctest::Approx(1.0 / n).epsilon(1e-8));
    CHECK(report.upper_bounds[k] == doctest::Approx(1.0 / n).epsilon(1e-9));
  }
  for (std::size_t k = 0; k + 1 < report.n_values.size(); ++k) {
    CHECK(report.max_piece_norms[k + 1] < report.max_piece_norms[k]);
    CHECK(report.upper_bounds[k] / report.upper_bounds[k + 1] ==
          doctest::Approx(2.0).epsilon(1e-9));  // 2^{1/b - 1} = 2
  }
}

TEST_CASE("partition demonstration rejects unsupported inputs") {
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const MeasureSpace atoms = MeasureSpace::finite_discrete({1.0}, {1.0});
  CHECK_THROWS_AS(
      collapse_demo(FunctionRep::indicator({{0.5, 1.5}}, atoms), psi, {2}),
      DomainError);
  const PsiFunction wide = PsiFunction::constant(1.0, 0.5, 1.0);
  CHECK_THROWS_AS(
      collapse_demo(FunctionRep::indicator({{0.0, 1.0}}), wide, {2}),
      DomainError);
}
