#include "doctest.h"

#include <cmath>

#include "qgls/gls.hpp"
#include "qgls/quasinorm.hpp"
#include "qgls/tail.hpp"

using namespace qgls;

TEST_CASE("tails of evaluable representations") {
  const TailFunction t1 = tail_of(FunctionRep::power_log({2.0, 0.0}));
  CHECK(t1(4.0) == doctest::Approx(0.5).epsilon(1e-12));   // invert x^{-2} >= 4
  CHECK(t1(0.5) == doctest::Approx(1.0).epsilon(1e-12));   // f >= 1 everywhere
  CHECK(t1(1e8) == doctest::Approx(1e-4).epsilon(1e-10));

  const TailFunction t2 = tail_of(FunctionRep::indicator({{0.0, 0.3}}));
  CHECK(t2(0.5) == 0.3);
  CHECK(t2(1.0) == 0.3);
  CHECK(t2(2.0) == 0.0);

  const TailFunction t3 = tail_of(FunctionRep::zero());
  CHECK(t3(0.5) == 0.0);
  CHECK(t3(100.0) == 0.0);
}

TEST_CASE("tail input validation") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  const FunctionRep t = FunctionRep::tail_defined(TailFunction::analytic(params));
  CHECK_THROWS_AS(tail_of(t), EvaluationUnsupported);
  CHECK_THROWS_AS(tail_of(FunctionRep::zero(), {0.0}), DomainError);
}

TEST_CASE("tails are nonincreasing") {
  const std::vector<FunctionRep> corpus{
      FunctionRep::power_log({2.0, 1.0}),
      FunctionRep::sampled({0.1, 0.4, 0.8}, {3.0, -1.0, 0.5}),
      FunctionRep::indicator({{0.1, 0.2}, {0.6, 0.9}}),
  };
  for (const FunctionRep& f : corpus) {
    const TailFunction tail = tail_of(f);
    double prev = kInf;
    for (double u = 0.25; u <= 64.0; u *= 2.0) {
      const double t = tail(u);
      CHECK(t <= prev + 1e-15);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
      prev = t;
    }
  }
}

TEST_CASE("moment integral recovers norms from tails") {
  // layer-cake identity against the direct norms
  const std::vector<FunctionRep> corpus{
      FunctionRep::indicator({{0.0, 0.3}}),
      FunctionRep::sampled({0.1, 0.4, 0.8}, {3.0, -1.0, 0.5}),
      FunctionRep::power_log({2.0, 0.0}),
      FunctionRep::power_log({2.0, 1.0}),
      FunctionRep::power_log({1.5, 0.5, SlowlyVarying::log_power(1.0)}),
  };
  for (const FunctionRep& f : corpus) {
    const TailFunction tail = tail_of(f);
    for (double p : {0.1, 0.25, 0.4}) {
      const double direct = lp_quasinorm(f, p).value;
      const double via_tail = norm_from_tail(tail, p).value;
      CHECK(via_tail == doctest::Approx(direct).epsilon(1e-6));
    }
  }
}

TEST_CASE("moment integral of an empirical indicator tail") {
  const TailFunction tail = tail_of(FunctionRep::indicator({{0.0, 0.5}}));
  CHECK(norm_from_tail(tail, 0.5).value == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(norm_from_tail(tail_of(FunctionRep::zero()), 0.5).value == 0.0);
}

TEST_CASE("a tail-defined function is normalized by its own moment generator") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 1.0;
  const FunctionRep xi = FunctionRep::tail_defined(TailFunction::analytic(params));
  const PsiFunction nat = natural_function(xi, 0.05, 0.45);
  CHECK(gls_norm(xi, nat).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("analytic tail moments against an independent integrator") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 1.0;
  const TailFunction tail = TailFunction::analytic(params);

  for (double p : {0.1, 0.3}) {
    // plain Simpson on the layer-cake integrand as the oracle
    const double flat = std::min(1.0, std::exp(params.log_value_from_log(1.0)));
    double oracle = flat * std::exp(p);  // p * integral_0^e u^{p-1} flat du
    const double y_max = 200.0 / (params.exponent - p);
    const int n = 400000;
    double simpson = 0.0;
    auto integrand = [&](double y) {
      const double log_t = std::min(0.0, params.log_value_from_log(y));
      return std::exp(log_t + p * y);
    };
    const double h = (y_max - 1.0) / n;
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      simpson += w * integrand(1.0 + k * h);
    }
    oracle += p * simpson * h / 3.0;
    const double expected = std::exp(std::log(oracle) / p);
    CHECK(norm_from_tail(tail, p).value ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("moment divergence at the tail exponent") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.4;
  const TailFunction tail = TailFunction::analytic(params);
  CHECK_THROWS_AS(norm_from_tail(tail, 0.4), TailIntegralDivergent);
  CHECK_THROWS_AS(norm_from_tail(tail, 0.7), TailIntegralDivergent);
  CHECK(norm_from_tail(tail, 0.35).is_finite());
}

TEST_CASE("generator matched to the analytic tail family") {
  const PsiFunction psi = tail_model_psi(0.5, 0.0);
  CHECK(psi(0.25) == doctest::Approx(16.0).epsilon(1e-13));  // (0.5-p)^{-2}
  CHECK(psi(0.05) > 0.0);
  CHECK(std::isfinite(psi(0.05)));
  CHECK_THROWS_AS(tail_model_psi(1.5, 0.0), DomainError);
  CHECK_THROWS_AS(tail_model_psi(0.5, -1.0), DomainError);
}

TEST_CASE("tail-model ratio stays bounded while the generator explodes") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 0.0;
  const TailFunction tail = TailFunction::analytic(params);
  const PsiFunction psi = tail_model_psi(0.5, 0.0);

  double ratio_min = kInf, ratio_max = 0.0, psi_min = kInf, psi_max = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double p = 0.4 + (0.4999 - 0.4) * k / 30.0;
    const double ratio = std::exp(log_norm_from_tail(tail, p) - psi.log_value(p));
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    psi_min = std::min(psi_min, psi(p));
    psi_max = std::max(psi_max, psi(p));
  }
  CHECK(ratio_max / ratio_min < 4.0);
  CHECK(psi_max / psi_min > 1e6);
}

TEST_CASE("membership of the tail-defined function in its matched space") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 1.0;
  const FunctionRep xi = FunctionRep::tail_defined(TailFunction::analytic(params));
  // gls_norm routes tail-defined inputs through the moment integral
  const GlsNormResult r = gls_norm(xi, tail_model_psi(0.5, 1.0));
  CHECK(!r.divergent);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0.0);
}

TEST_CASE("Tchebychev bound dominates the true tail") {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const TailFunction tail = tail_of(f);
  const PsiFunction nat = natural_function(f, 0.05, 0.45);
  const std::vector<double> u_grid{1.5, 2.0, 4.0, 16.0, 256.0};
  const TailBoundReport report = tcheby_tail_bound(1.0, nat, u_grid, nat, tail);
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    CHECK(report.tcheby_bound[i] >=
          report.exact_or_empirical_tail[i] * (1.0 - 1e-9));
  }
  CHECK(report.tcheby_bound.back() < report.tcheby_bound.front());  // decays in u
}

TEST_CASE("a degenerate-narrow window reduces to plain Tchebychev") {
  const double p0 = 0.3;
  const PsiFunction narrow = PsiFunction::constant(1.0, p0 - 1e-7, p0 + 1e-7);
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const double G = gls_norm(f, narrow).value;
  const TailBoundReport report = tcheby_tail_bound(G, narrow, {4.0, 64.0});
  for (std::size_t i = 0; i < report.u_grid.size(); ++i) {
    const double plain = std::pow(G, p0) / std::pow(report.u_grid[i], p0);
    CHECK(report.tcheby_bound[i] == doctest::Approx(plain).epsilon(1e-4));
  }
}

TEST_CASE("exponent choice p = b - c/ln x") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 0.0;

  SUBCASE("abscissae below e are refused") {
    CHECK_THROWS_AS(optimal_p_tail_estimate_x(params, 0.25, {2.0}), DomainError);
  }
  SUBCASE("constants that push p out of (0, b) are refused") {
    CHECK_THROWS_AS(optimal_p_tail_estimate(params, 1.0, {1.0}), DomainError);
    // c < b keeps x = e valid
    const TailBoundReport ok = optimal_p_tail_estimate(params, 0.25, {1.0});
    CHECK(ok.gap_ratio.size() == 1);
  }
  SUBCASE("bound dominates the tail and the gap doubles with ln x") {
    std::vector<double> log_x;
    for (int k = 1; k <= 10; ++k) log_x.push_back(std::pow(2.0, k));
    const TailBoundReport report =
        optimal_p_tail_estimate(params, params.exponent / 2.0, log_x);
    for (std::size_t i = 0; i < log_x.size(); ++i)
      CHECK(report.log_bound[i] >= report.log_tail[i] - 1e-9);
    const std::size_t n = report.gap_ratio.size();
    const double doubling = report.gap_ratio[n - 1] / report.gap_ratio[n - 2];
    CHECK(doubling == doctest::Approx(2.0).epsilon(0.15));
    CHECK(gap_law_slope(report) == doctest::Approx(1.0).epsilon(0.1));
  }
}
