#include "qgls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qgls/config.hpp"
#include "qgls/fixpoint.hpp"
#include "qgls/gls.hpp"
#include "qgls/serialize.hpp"
#include "qgls/tail.hpp"
#include "qgls/transfer.hpp"

namespace qgls::verify {

namespace {

std::string fmt(double v) { return jout::format_number(v); }

FunctionRep random_sampled(std::mt19937_64& rng, std::size_t max_pieces = 12) {
  std::uniform_int_distribution<std::size_t> count(2, max_pieces);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t n = count(rng);
  std::vector<double> grid;
  for (std::size_t i = 0; i < n; ++i) grid.push_back(0.98 * unif(rng) + 0.005);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) grid = {0.25, 0.75};
  std::vector<double> values;
  for (std::size_t i = 0; i < grid.size(); ++i)
    values.push_back(4.0 * unif(rng) - 1.0);
  return FunctionRep::sampled(std::move(grid), std::move(values));
}

std::vector<PsiFunction> psi_zoo() {
  return {PsiFunction::constant(1.0, 0.25, 0.5),
          PsiFunction::iwaniec_sbordone(1.0, 0.25, 0.5),
          PsiFunction::iwaniec_sbordone(1.0, 0.05, 0.5),
          PsiFunction::iwaniec_sbordone(0.5, 0.1, 1.0),
          PsiFunction::bandaliyev(0.5),
          PsiFunction::tail_model(0.5, 1.0, SlowlyVarying::log_power(1.0)),
          PsiFunction::tail_model(0.3, 0.0)};
}

using Check = std::function<CheckResult()>;

CheckResult check_psi_positivity() {
  double worst_margin = kInf;
  for (const PsiFunction& psi : psi_zoo()) {
    const PsiFunction::SearchRange r = psi.search_range();
    const double eps = r.closed_lo ? 0.0 : 1e-6 * (r.hi - r.lo);
    double grid_min = kInf;
    for (int k = 0; k < 101; ++k) {
      const double p = (r.lo + eps) + (r.hi - eps - (r.lo + eps)) * k / 100.0;
      const double v = psi(p);
      if (!(v > 0.0)) return {"measure/psi-positivity-grid", false,
                              "nonpositive value at p=" + fmt(p)};
      grid_min = std::min(grid_min, v);
    }
    worst_margin = std::min(worst_margin, grid_min / psi.inf_psi());
  }
  const bool pass = worst_margin >= 1.0 - 1e-9;
  return {"measure/psi-positivity-grid", pass,
          "grid min / cached inf >= " + fmt(worst_margin)};
}

CheckResult check_indicator_binary() {
  const FunctionRep f = FunctionRep::indicator({{0.1, 0.3}, {0.5, 0.6}});
  for (int k = 1; k < 200; ++k) {
    const double x = k / 200.0;
    const double v = f.evaluate(x);
    if (v != 0.0 && v != 1.0)
      return {"measure/indicator-binary", false, "value " + fmt(v)};
  }
  return {"measure/indicator-binary", true, "values in {0,1} on a 199-point grid"};
}

CheckResult check_powerlog_monotone() {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  double prev = kInf;
  for (int k = 1; k <= 300; ++k) {
    const double x = k / 301.0;
    const double v = f.evaluate(x);
    if (!(v < prev))
      return {"measure/powerlog-monotone", false, "not decreasing at x=" + fmt(x)};
    prev = v;
  }
  return {"measure/powerlog-monotone", true, "strictly decreasing on 300 samples"};
}

CheckResult check_homogeneity() {
  std::mt19937_64 rng(41);
  double worst = 0.0;
  std::vector<FunctionRep> corpus{FunctionRep::power_log({2.0, 1.0}),
                                  FunctionRep::indicator({{0.0, 0.4}}),
                                  random_sampled(rng)};
  for (const FunctionRep& f : corpus) {
    for (double alpha : {0.5, 3.0}) {
      for (double p : {0.2, 0.45}) {
        const double lhs = lp_quasinorm(f.scaled(alpha), p).value;
        const double rhs = std::abs(alpha) * lp_quasinorm(f, p).value;
        if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
      }
    }
  }
  return {"quasinorm/homogeneity", worst <= 1e-8,
          "max relative deviation " + fmt(worst)};
}

CheckResult check_zero_law() {
  const FunctionRep z = FunctionRep::zero();
  const FunctionRep z2 = FunctionRep::sampled({0.2, 0.8}, {0.0, 0.0});
  const FunctionRep nz = FunctionRep::sampled({0.2, 0.8}, {0.0, 1e-12});
  const bool pass = lp_quasinorm(z, 0.5).value == 0.0 &&
                    lp_quasinorm(z2, 0.3).value == 0.0 &&
                    lp_quasinorm(nz, 0.3).value > 0.0;
  return {"quasinorm/zero-law", pass, "zero iff the representation vanishes"};
}

CheckResult check_double_inequality() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double A = 10.0 * unif(rng), B = 10.0 * unif(rng);
    const double p = 0.999 * unif(rng) + 0.0005;
    const double lhs = std::pow(A + B, p);
    const double mid = std::pow(A, p) + std::pow(B, p);
    const double rhs = std::pow(2.0, 1.0 - p) * lhs;
    worst = std::max(worst, lhs - mid * (1.0 + 1e-12));
    worst = std::max(worst, mid - rhs * (1.0 + 1e-12));
  }
  return {"quasinorm/double-inequality", worst <= 0.0,
          "worst slack " + fmt(worst)};
}

CheckResult check_sampled_oracle() {
  std::mt19937_64 rng(43);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const FunctionRep f = random_sampled(rng, 8);
    for (double p : {0.2, 0.5, 0.8, 1.0}) {
      const double exact = lp_quasinorm(f, p).value;
      const double quad = lp_quasinorm_force_quadrature(f, p, 1e-7).value;
      if (exact > 0.0)
        worst = std::max(worst, std::abs(quad - exact) / exact);
    }
  }
  return {"quasinorm/sampled-oracle-equivalence", worst <= 1e-6,
          "max relative gap " + fmt(worst)};
}

CheckResult check_divergence_threshold() {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const NormResult fin = lp_quasinorm(f, 0.49);
  const NormResult div1 = lp_quasinorm(f, 0.5);
  const NormResult div2 = lp_quasinorm(f, 0.75);
  const bool pass = fin.is_finite() && !div1.is_finite() && div1.converged &&
                    !div2.is_finite() && div2.converged;
  return {"quasinorm/powerlog-divergence", pass,
          "finite below 1/Delta, +inf at and above"};
}

CheckResult check_lp_saturation() {
  std::ostringstream detail;
  bool pass = true;
  for (double p : {0.25, 0.5, 2.0 / 3.0}) {
    const FunctionRep f = FunctionRep::indicator({{0.0, 0.5}});
    const FunctionRep g = FunctionRep::indicator({{0.5, 1.0}});
    const QuasiTriangleCertificate cert = quasi_triangle_check(f, g, p);
    const double expected = std::pow(2.0, 1.0 / p - 1.0);
    const double err = std::abs(cert.worst_ratio_observed - expected) / expected;
    pass = pass && err <= 1e-12 && cert.p_norm_holds;
    detail << "C(" << fmt(p) << ")=" << fmt(expected) << " err=" << fmt(err) << "; ";
  }
  return {"quasinorm/lp-triangle-saturation", pass, detail.str()};
}

CheckResult check_natural_normalization() {
  std::mt19937_64 rng(44);
  std::vector<std::pair<FunctionRep, std::pair<double, double>>> corpus;
  corpus.push_back({FunctionRep::power_log({2.0, 0.0}), {0.05, 0.45}});
  corpus.push_back({FunctionRep::power_log({2.0, 1.0}), {0.05, 0.45}});
  corpus.push_back({FunctionRep::indicator({{0.0, 0.3}}), {0.25, 0.75}});
  corpus.push_back({random_sampled(rng), {0.2, 0.9}});
  double worst = 0.0;
  for (const auto& [f, window] : corpus) {
    const PsiFunction nat = natural_function(f, window.first, window.second);
    const GlsNormResult r = gls_norm(f, nat);
    worst = std::max(worst, std::abs(r.value - 1.0));
  }
  return {"gls/natural-normalization", worst <= 1e-6,
          "max |value - 1| = " + fmt(worst)};
}

CheckResult check_gls_scaling() {
  std::mt19937_64 rng(45);
  const FunctionRep f = random_sampled(rng);
  const PsiFunction psi = PsiFunction::iwaniec_sbordone(1.0, 0.25, 0.5);
  double worst = 0.0;
  for (double alpha : {0.25, 7.0}) {
    const double lhs = gls_norm(f.scaled(alpha), psi).value;
    const double rhs = alpha * gls_norm(f, psi).value;
    if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return {"gls/scaling", worst <= 1e-8, "max relative deviation " + fmt(worst)};
}

CheckResult check_gls_quasi_triangle() {
  std::mt19937_64 rng(46);
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{
           {0.25, 0.5}, {0.1, 0.8}, {0.4, 1.0}}) {
    const PsiFunction psi = PsiFunction::constant(1.0, a, b);
    const double constant = std::pow(2.0, 1.0 / a - 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const FunctionRep f = random_sampled(rng, 6);
      const FunctionRep g = random_sampled(rng, 6);
      const double nf = gls_norm(f, psi).value;
      const double ng = gls_norm(g, psi).value;
      if (nf + ng == 0.0) continue;
      const double nsum = gls_norm(FunctionRep::piecewise_sum(f, g), psi).value;
      worst = std::max(worst, nsum / (nf + ng));
      pass = pass && worst <= constant * (1.0 + 1e-9);
    }
    detail << "a=" << fmt(a) << " C=" << fmt(constant) << " worst=" << fmt(worst)
           << "; ";
  }
  return {"gls/quasi-triangle", pass, detail.str()};
}

CheckResult check_fundamental_bilateral() {
  std::vector<double> deltas;
  for (int k = 1; k <= 20; ++k) deltas.push_back(k / 20.0);
  bool pass = true;
  std::ostringstream detail;
  for (const PsiFunction& psi : psi_zoo()) {
    const FundamentalBoundsReport report = fundamental_bounds_check(psi, deltas);
    pass = pass && report.all_hold;
    double prev = -1.0;
    for (const auto& row : report.rows) {
      pass = pass && row.phi >= prev - 1e-12;
      prev = row.phi;
    }
  }
  const PsiFunction flat = PsiFunction::constant(1.0, 0.25, 0.5);
  const double phi = fundamental_function(flat, 0.25);
  const double attained = std::abs(phi - std::pow(0.25, 2.0)) / 0.0625;
  pass = pass && attained <= 1e-6;
  detail << "bounds hold; right-bound attainment error " << fmt(attained);
  return {"gls/fundamental-bilateral", pass, detail.str()};
}

CheckResult check_collapse() {
  const FunctionRep f =
      FunctionRep::indicator({{0.0, 1.0}}, MeasureSpace::unit_interval());
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const CollapseReport report = collapse_demo(f, psi, {2, 4, 8, 16, 32, 64});
  bool pass = report.bounds_hold && report.max_reconstruction_error <= 1e-12;
  const double expected_ratio = std::pow(2.0, 1.0 / 0.5 - 1.0);
  for (std::size_t k = 0; k + 1 < report.upper_bounds.size(); ++k) {
    const double ratio = report.upper_bounds[k] / report.upper_bounds[k + 1];
    pass = pass && std::abs(ratio - expected_ratio) <= 1e-9 * expected_ratio;
    pass = pass && report.max_piece_norms[k + 1] < report.max_piece_norms[k];
  }
  return {"gls/collapse-demo", pass,
          "bounds hold, doubling ratio 2^{1/b-1}, reconstruction error " +
              fmt(report.max_reconstruction_error)};
}

CheckResult check_boyd() {
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const FunctionRep probe =
      FunctionRep::indicator({{0.0, 1.0}}, MeasureSpace::half_line());
  std::vector<double> s_grid;
  for (int k = 4; k <= 10; ++k) {
    s_grid.push_back(std::pow(2.0, -k));
    s_grid.push_back(std::pow(2.0, k));
  }
  const BoydEstimate est = boyd_indices(psi, probe, s_grid);
  const double e1 = std::abs(est.gamma1 - 2.0) / 2.0;
  const double e2 = std::abs(est.gamma2 - 4.0) / 4.0;
  const bool pass = e1 <= 0.02 && e2 <= 0.02 && est.gamma1 <= est.gamma2;
  return {"gls/boyd-indices", pass,
          "gamma1=" + fmt(est.gamma1) + " gamma2=" + fmt(est.gamma2)};
}

CheckResult check_layer_cake() {
  std::mt19937_64 rng(47);
  std::vector<FunctionRep> corpus{FunctionRep::indicator({{0.0, 0.3}}),
                                  random_sampled(rng),
                                  FunctionRep::power_log({2.0, 0.0}),
                                  FunctionRep::power_log({2.0, 1.0})};
  double worst = 0.0;
  for (const FunctionRep& f : corpus) {
    const TailFunction tail = tail_of(f);
    for (double p : {0.1, 0.25, 0.4}) {
      const double direct = lp_quasinorm(f, p).value;
      const double via_tail = norm_from_tail(tail, p).value;
      if (direct > 0.0)
        worst = std::max(worst, std::abs(via_tail - direct) / direct);
    }
  }
  return {"tail/layer-cake-identity", worst <= 1e-6,
          "max relative gap " + fmt(worst)};
}

CheckResult check_tail_bounding() {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const TailFunction tail = tail_of(f);
  const PsiFunction nat = natural_function(f, 0.05, 0.45);
  std::vector<double> u_grid{1.5, 2.0, 4.0, 16.0, 128.0, 4096.0};
  const TailBoundReport report =
      tcheby_tail_bound(1.0, nat, u_grid, nat, tail);
  bool pass = true;
  double prev_tail = kInf;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    pass = pass && report.exact_or_empirical_tail[i] <= prev_tail + 1e-15;
    prev_tail = report.exact_or_empirical_tail[i];
    pass = pass && report.tcheby_bound[i] >=
                       report.exact_or_empirical_tail[i] * (1.0 - 1e-9);
  }
  pass = pass && report.tcheby_bound.back() < report.tcheby_bound.front();
  return {"tail/monotone-and-bounding", pass,
          "tail nonincreasing, bound >= tail on the grid"};
}

CheckResult check_gap_slope() {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 0.0;
  std::vector<double> log_x;
  for (int k = 1; k <= 8; ++k) log_x.push_back(std::pow(2.0, k));
  const TailBoundReport report =
      optimal_p_tail_estimate(params, params.exponent / 2.0, log_x);
  const double slope = gap_law_slope(report);
  bool pass = std::abs(slope - 1.0) <= 0.1;
  for (std::size_t i = 0; i < report.log_bound.size(); ++i)
    pass = pass && report.log_bound[i] >= report.log_tail[i] - 1e-9;
  return {"tail/gap-slope-law", pass, "slope " + fmt(slope)};
}

CheckResult check_tail_model_membership() {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 1.0;
  const FunctionRep xi = FunctionRep::tail_defined(TailFunction::analytic(params));
  const PsiFunction psi = tail_model_psi(0.5, 1.0);
  const GlsNormResult r = gls_norm(xi, psi);
  bool pass = std::isfinite(r.value) && r.value > 0.0 && !r.divergent;

  double ratio_min = kInf, ratio_max = 0.0, psi_min = kInf, psi_max = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double p = 0.4 + 0.0999 * k / 40.0;
    const double ratio =
        std::exp(log_norm_from_tail(TailFunction::analytic(params), p) -
                 psi.log_value(p));
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    psi_min = std::min(psi_min, psi(p));
    psi_max = std::max(psi_max, psi(p));
  }
  pass = pass && ratio_max / ratio_min < 10.0 && psi_max / psi_min > 1e4;
  return {"tail/model-membership", pass,
          "norm " + fmt(r.value) + ", ratio spread x" + fmt(ratio_max / ratio_min)};
}

CheckResult check_certificates() {
  bool pass = true;
  // Scalar problem with d = |x-y|^2, map x/3, fixed point 0.
  {
    QuasiMetricSpace space = squared_euclidean_space(2.0);
    ContractionProblem problem{space, [](const Point& x) {
                                 return Point{x[0] / 3.0};
                               },
                               1.0 / 9.0, {1.0}};
    for (ContractionMode mode :
         {ContractionMode::TriangleSquared, ContractionMode::Quadrilateral}) {
      const ContractionCertificate cert =
          solve(problem, mode, {0.0, 50});
      for (const auto& it : cert.iterations) {
        const double xn = std::pow(3.0, -static_cast<double>(it.n));
        pass = pass && xn * xn <= it.bound * (1.0 + 1e-12);
      }
    }
  }
  // Sampled-function problem with the exact piecewise L_p quasi-distance.
  {
    QuasiMetricSpace space = lp_sampled_space(0.75, {0.25, 0.25, 0.25, 0.25});
    const Point w{1.0, -2.0, 0.5, 3.0};
    auto map = [&w](const Point& x) {
      Point y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / 3.0 + w[i];
      return y;
    };
    Point star(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) star[i] = 1.5 * w[i];
    ContractionProblem problem{space, map, 1.0 / 3.0, {0.0, 0.0, 0.0, 0.0}};
    for (ContractionMode mode :
         {ContractionMode::TriangleSquared, ContractionMode::Quadrilateral}) {
      const ContractionCertificate cert = solve(problem, mode, {0.0, 50});
      Point x = problem.x0;
      for (const auto& it : cert.iterations) {
        x = map(x);
        pass = pass && space.distance(star, x) <= it.bound * (1.0 + 1e-12);
      }
    }
  }
  // Refusal when alpha K^2 >= 1.
  bool refused = false;
  try {
    QuasiMetricSpace space = squared_euclidean_space();
    ContractionProblem bad{space,
                           [](const Point& x) { return Point{x[0] / 2.0}; },
                           0.25, {1.0}};
    solve(bad, ContractionMode::TriangleSquared, {0.0, 10});
  } catch (const ConditionViolated&) {
    refused = true;
  }
  pass = pass && refused;
  return {"fixpoint/certificate-soundness", pass,
          "bounds dominate the true error; refusal at alpha K^2 >= 1"};
}

CheckResult check_decay_slope() {
  QuasiMetricSpace space = squared_euclidean_space(2.0);
  ContractionProblem problem{space, [](const Point& x) {
                               return Point{x[0] / 3.0};
                             },
                             1.0 / 9.0, {1.0}};
  const ContractionCertificate cert =
      solve(problem, ContractionMode::TriangleSquared, {0.0, 40});
  std::vector<double> xs, ys;
  for (const auto& it : cert.iterations) {
    if (it.step_distance <= 0.0) break;
    xs.push_back(static_cast<double>(it.n));
    ys.push_back(std::log(it.step_distance));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double n = static_cast<double>(xs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = slope <= std::log(problem.alpha) + 1e-3;
  return {"fixpoint/geometric-decay", pass, "step-decay slope " + fmt(slope)};
}

CheckResult check_mode_dominance() {
  bool pass = true;
  for (double K : {1.0, 1.5, 2.0, 3.0}) {
    const double alpha = 0.9 / (K * K);
    ContractionCertificate tri, quad;
    tri.mode = ContractionMode::TriangleSquared;
    quad.mode = ContractionMode::Quadrilateral;
    tri.K_used = quad.K_used = K;
    tri.alpha = quad.alpha = alpha;
    tri.d0 = quad.d0 = 1.0;
    for (std::size_t n = 0; n <= 30; ++n)
      pass = pass && quad.bound_at(n) <= tri.bound_at(n) * (1.0 + 1e-12);
  }
  for (double a : {0.1, 0.25, 0.5, 0.9}) {
    const QuasiConstants c = gls_quasi_constants(a);
    pass = pass && c.K_quad <= c.K_triangle * c.K_triangle * (1.0 + 1e-12);
  }
  return {"fixpoint/mode-dominance", pass,
          "chain bound never exceeds the squared-triangle bound at equal K"};
}

CheckResult check_transfer_upper() {
  const MeasureSpace half = MeasureSpace::half_line();
  std::vector<std::pair<std::string, FunctionRep>> corpus;
  corpus.emplace_back("ind_small", FunctionRep::indicator({{0.0, 0.5}}, half));
  corpus.emplace_back("ind_unit", FunctionRep::indicator({{0.0, 1.0}}, half));
  corpus.emplace_back("steps", FunctionRep::sampled({0.0, 1.0, 3.0}, {2.0, 0.5, 0.0}, half));
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);

  double worst = 0.0;
  {
    const TransferReport r = verify_transfer_norm(
        identity_operator(), OperatorBoundProfile::constant(1.0, 0.25, 0.5),
        psi, corpus);
    worst = std::max(worst, r.max_ratio);
  }
  {
    const TransferReport r = verify_transfer_norm(
        dilation_operator(2.0), OperatorBoundProfile::power_of_s(2.0, 0.25, 0.5),
        psi, corpus);
    worst = std::max(worst, r.max_ratio);
  }
  {
    const TransferReport r = verify_transfer_norm(
        scaling_operator(0.7), OperatorBoundProfile::constant(1.0, 0.25, 0.5),
        psi, corpus);
    worst = std::max(worst, r.max_ratio);
  }
  return {"transfer/upper-estimate", worst <= 1.0 + 1e-6,
          "max ratio " + fmt(worst)};
}

CheckResult check_transfer_sharpness() {
  const MeasureSpace half = MeasureSpace::half_line();
  std::vector<std::pair<std::string, FunctionRep>> corpus;
  corpus.emplace_back("ind", FunctionRep::indicator({{0.0, 0.5}}, half));
  const PsiFunction psi = PsiFunction::constant(1.0, 0.25, 0.5);
  const TransferReport r = verify_transfer_norm(
      dilation_operator(2.0), OperatorBoundProfile::power_of_s(2.0, 0.25, 0.5),
      psi, corpus);
  const bool pass = r.max_ratio >= 1.0 - 1e-6 && r.max_ratio <= 1.0 + 1e-6;
  return {"transfer/sharpness-witness", pass, "dilation ratio " + fmt(r.max_ratio)};
}

CheckResult check_config_round_trip() {
  config::Document doc;
  doc.function = FunctionRep::power_log({2.0, 1.0, SlowlyVarying::log_power(0.5)});
  doc.psi = PsiFunction::iwaniec_sbordone(1.0, 0.25, 0.5);
  const std::string once = config::echo_document(doc).dump(2);
  const config::Document reparsed = config::parse_document(once);
  const std::string twice = config::echo_document(reparsed).dump(2);
  return {"cli/config-round-trip", once == twice,
          once == twice ? "echo is a fixed point of parse+echo"
                        : "echo drifted after re-parse"};
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& filter) {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"measure/psi-positivity-grid", check_psi_positivity},
      {"measure/indicator-binary", check_indicator_binary},
      {"measure/powerlog-monotone", check_powerlog_monotone},
      {"quasinorm/homogeneity", check_homogeneity},
      {"quasinorm/zero-law", check_zero_law},
      {"quasinorm/double-inequality", check_double_inequality},
      {"quasinorm/sampled-oracle-equivalence", check_sampled_oracle},
      {"quasinorm/powerlog-divergence", check_divergence_threshold},
      {"quasinorm/lp-triangle-saturation", check_lp_saturation},
      {"gls/natural-normalization", check_natural_normalization},
      {"gls/scaling", check_gls_scaling},
      {"gls/quasi-triangle", check_gls_quasi_triangle},
      {"gls/fundamental-bilateral", check_fundamental_bilateral},
      {"gls/collapse-demo", check_collapse},
      {"gls/boyd-indices", check_boyd},
      {"tail/layer-cake-identity", check_layer_cake},
      {"tail/monotone-and-bounding", check_tail_bounding},
      {"tail/gap-slope-law", check_gap_slope},
      {"tail/model-membership", check_tail_model_membership},
      {"fixpoint/certificate-soundness", check_certificates},
      {"fixpoint/geometric-decay", check_decay_slope},
      {"fixpoint/mode-dominance", check_mode_dominance},
      {"transfer/upper-estimate", check_transfer_upper},
      {"transfer/sharpness-witness", check_transfer_sharpness},
      {"cli/config-round-trip", check_config_round_trip},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    CheckResult r;
    try {
      r = check();
      r.name = name;
    } catch (const std::exception& e) {
      r.name = name;
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace qgls::verify
