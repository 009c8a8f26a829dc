#include "qgls/quasinorm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgls/quadrature.hpp"

namespace qgls {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw DomainError("quasi-norm exponent must lie in (0, 1]");
}

// Width of the initial truncation window for integrands that behave like
// t^s * e^{-lambda t}: far enough out that the remainder is negligible.
double initial_window(double lambda, double s) {
  if (!(lambda > 0.0)) return 16.0;  // probe mode; divergence rule decides
  double T = 45.0 / lambda;
  for (int i = 0; i < 3; ++i)
    T = (45.0 + s * std::max(0.0, std::log(T))) / lambda;
  return std::max(T, 8.0);
}

struct IntegralOutcome {
  double value = 0.0;     // integral of |f|^p
  double abs_error = 0.0;
  bool divergent = false;
};

IntegralOutcome power_log_integral(const PowerLogParams& params, double p,
                                   double integral_tol) {
  // integral of f^p over (0,1) with x = e^{-t}:
  //   scale^p * integral_0^inf e^{-(1 - p Delta) t} t^{p delta} L(t)^p dt.
  const double lambda = 1.0 - p * params.Delta;
  const double s = p * params.delta;
  const auto& sv = params.slowly_varying;
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-lambda * t + s * std::log(t) + p * sv.log_value(t));
  };
  quad::TailResult r = quad::integrate_decaying(
      integrand, 0.0, integral_tol, initial_window(lambda, s));
  if (r.divergent) return {kInf, 0.0, true};
  if (!r.res.converged)
    throw QuadratureNoConvergence("power-log norm integral stalled before tolerance");
  return {r.res.value, r.res.abs_error, false};
}

IntegralOutcome quadrature_integral(const FunctionRep& f, double p,
                                    double integral_tol) {
  auto gp = [&](double x) { return std::pow(std::abs(f.evaluate(x)), p); };
  const std::vector<double> cuts = f.breakpoints();
  if (f.space().kind() == MeasureSpace::Kind::UnitInterval) {
    quad::Result r = quad::integrate_finite(gp, 0.0, 1.0, integral_tol, 0.0,
                                            20000, cuts);
    if (!r.converged)
      throw QuadratureNoConvergence("unit-interval norm integral stalled before tolerance");
    return {r.value, r.abs_error, false};
  }
  // Half line: split at 1; x = e^{-t} below, x = e^{t} above.
  std::vector<double> lower_cuts, upper_cuts;
  for (double c : cuts) {
    if (c > 0.0 && c < 1.0) lower_cuts.push_back(-std::log(c));
    if (c > 1.0) upper_cuts.push_back(std::log(c));
  }
  auto lower = [&](double t) { return gp(std::exp(-t)) * std::exp(-t); };
  auto upper = [&](double t) { return gp(std::exp(t)) * std::exp(t); };
  quad::TailResult lo =
      quad::integrate_decaying(lower, 0.0, integral_tol, 16.0, 60, lower_cuts);
  quad::TailResult hi =
      quad::integrate_decaying(upper, 0.0, integral_tol, 16.0, 60, upper_cuts);
  if (lo.divergent || hi.divergent) return {kInf, 0.0, true};
  if (!lo.res.converged || !hi.res.converged)
    throw QuadratureNoConvergence("half-line norm integral stalled before tolerance");
  return {lo.res.value + hi.res.value, lo.res.abs_error + hi.res.abs_error, false};
}

NormResult from_integral(const IntegralOutcome& io, double p, double rel_tol,
                         double extra_log_scale = 0.0) {
  NormResult out;
  out.p = p;
  if (io.divergent) {
    out.value = kInf;
    out.abs_error_estimate = 0.0;
    out.converged = true;
    return out;
  }
  if (io.value <= 0.0) {
    out.value = 0.0;
    out.converged = true;
    return out;
  }
  out.value = std::exp(extra_log_scale + std::log(io.value) / p);
  const double rel_integral = io.abs_error / io.value;
  out.abs_error_estimate = out.value * rel_integral / p;
  out.converged = out.abs_error_estimate <= rel_tol * out.value;
  if (!out.converged)
    throw QuadratureNoConvergence("norm error estimate exceeds requested tolerance");
  return out;
}

NormResult pieces_norm(const FunctionRep& f, double p) {
  NormResult out;
  out.p = p;
  const double lv = log_lp_quasinorm_pieces(f, p);
  out.value = std::isinf(lv) && lv < 0 ? 0.0 : std::exp(lv);
  if (std::isinf(lv) && lv > 0) out.value = kInf;
  out.abs_error_estimate = 0.0;
  out.converged = true;
  return out;
}

}  // namespace

double log_lp_quasinorm_pieces(const FunctionRep& f, double p) {
  check_p(p);
  const std::vector<Piece> ps = f.pieces();
  // ln( sum len * |v|^p ) / p, scaled to avoid overflow for extreme values.
  double vmax = 0.0;
  for (const Piece& pc : ps)
    if (pc.measure > 0.0) vmax = std::max(vmax, std::abs(pc.value));
  if (vmax == 0.0) return -kInf;
  double sum = 0.0;
  for (const Piece& pc : ps) {
    if (pc.value == 0.0 || pc.measure == 0.0) continue;
    if (!std::isfinite(pc.measure)) return kInf;  // nonzero on infinite measure
    sum += pc.measure * std::pow(std::abs(pc.value) / vmax, p);
  }
  return std::log(vmax) + std::log(sum) / p;
}

NormResult lp_quasinorm(const FunctionRep& f, double p, double rel_tol) {
  check_p(p);
  if (f.is_tail_defined())
    throw EvaluationUnsupported(
        "tail-defined functions: compute norms from the tail moment integral");
  if (f.is_piecewise_constant()) return pieces_norm(f, p);

  const double integral_tol = std::max(0.5 * rel_tol * p, 1e-14);
  if (f.is_power_log()) {
    const PowerLogParams& params = f.power_log_data().params;
    if (params.scale == 0.0) {
      NormResult out;
      out.p = p;
      return out;
    }
    IntegralOutcome io = power_log_integral(params, p, integral_tol);
    return from_integral(io, p, rel_tol, std::log(params.scale));
  }
  return from_integral(quadrature_integral(f, p, integral_tol), p, rel_tol);
}

NormResult lp_quasinorm_force_quadrature(const FunctionRep& f, double p,
                                         double rel_tol) {
  check_p(p);
  if (f.is_tail_defined())
    throw EvaluationUnsupported("tail-defined functions cannot be integrated pointwise");
  const double integral_tol = std::max(0.5 * rel_tol * p, 1e-14);
  return from_integral(quadrature_integral(f, p, integral_tol), p, rel_tol);
}

NormResult lp_norm_of_sum(const FunctionRep& f, const FunctionRep& g, double p,
                          double rel_tol) {
  check_p(p);
  if (f.is_piecewise_constant() && g.is_piecewise_constant())
    return pieces_norm(FunctionRep::piecewise_sum(f, g), p);
  if (f.is_tail_defined() || g.is_tail_defined())
    throw EvaluationUnsupported("cannot form the pointwise sum of tail-defined functions");
  if (!(f.space() == g.space()))
    throw DomainMismatch("summands must live on the same measure space");
  if (f.space().kind() != MeasureSpace::Kind::UnitInterval)
    throw EvaluationUnsupported("analytic sums are supported on the unit interval only");

  // At least one power-log factor: integrate in t = |ln x| where the
  // singular behavior is exponential.
  double max_delta = 0.0;
  std::vector<double> t_cuts;
  for (const FunctionRep* h : {&f, &g}) {
    if (h->is_power_log())
      max_delta = std::max(max_delta, h->power_log_data().params.Delta);
    for (double c : h->breakpoints())
      if (c > 0.0 && c < 1.0) t_cuts.push_back(-std::log(c));
  }
  const double lambda = 1.0 - p * max_delta;
  const double integral_tol = std::max(0.5 * rel_tol * p, 1e-14);
  auto integrand = [&](double t) {
    const double x = std::exp(-t);
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double v = std::abs(f.evaluate(x) + g.evaluate(x));
    return v > 0.0 ? std::exp(p * std::log(v) - t) : 0.0;
  };
  quad::TailResult r = quad::integrate_decaying(integrand, 0.0, integral_tol,
                                                initial_window(lambda, p), 60,
                                                t_cuts);
  if (r.divergent) return {kInf, p, 0.0, true};
  if (!r.res.converged)
    throw QuadratureNoConvergence("sum-norm integral stalled before tolerance");
  return from_integral({r.res.value, r.res.abs_error, false}, p, rel_tol);
}

double geometric_mean_limit(const FunctionRep& f, double rel_tol) {
  if (f.space().kind() != MeasureSpace::Kind::UnitInterval)
    throw DomainError("geometric mean limit is defined on the unit interval");
  if (f.is_tail_defined())
    throw EvaluationUnsupported("tail-defined functions have no pointwise logarithm");

  if (f.is_piecewise_constant()) {
    const std::vector<Piece> ps = f.pieces();
    double covered = 0.0, integral = 0.0;
    for (const Piece& pc : ps) {
      if (pc.measure <= 0.0) continue;
      if (pc.value == 0.0)
        throw DivergentLogIntegral("function vanishes on a set of positive measure");
      covered += pc.measure;
      integral += pc.measure * std::log(std::abs(pc.value));
    }
    if (covered < 1.0 - 1e-12)
      throw DivergentLogIntegral("function vanishes on a set of positive measure");
    return std::exp(integral);
  }

  const PowerLogParams& params = f.power_log_data().params;
  if (params.scale == 0.0)
    throw DivergentLogIntegral("zero function has divergent log integral");
  const auto& sv = params.slowly_varying;
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return (params.Delta * t + params.delta * std::log(t) + sv.log_value(t)) *
           std::exp(-t);
  };
  quad::TailResult r = quad::integrate_decaying(integrand, 0.0,
                                                std::max(rel_tol, 1e-13), 50.0);
  if (r.divergent || !r.res.converged)
    throw QuadratureNoConvergence("log-integral quadrature stalled before tolerance");
  return std::exp(std::log(params.scale) + r.res.value);
}

QuasiTriangleCertificate quasi_triangle_check(const FunctionRep& f,
                                              const FunctionRep& g, double p,
                                              double rel_tol) {
  check_p(p);
  const NormResult nf = lp_quasinorm(f, p, rel_tol);
  const NormResult ng = lp_quasinorm(g, p, rel_tol);
  if (!nf.is_finite() || !ng.is_finite())
    throw NormDivergent(p, "quasi-triangle check needs both norms finite");
  const NormResult nsum = lp_norm_of_sum(f, g, p, rel_tol);

  QuasiTriangleCertificate cert{.p_or_a = p,
                                .constant_claimed = std::pow(2.0, 1.0 / p - 1.0),
                                .worst_ratio_observed = 0.0,
                                .witness = {f, g}};
  cert.norm_sum = nf.value + ng.value;
  cert.norm_of_sum = nsum.value;
  cert.worst_ratio_observed =
      cert.norm_sum > 0.0 ? cert.norm_of_sum / cert.norm_sum
                          : (cert.norm_of_sum > 0.0 ? kInf : 0.0);

  const double lhs_p = std::pow(nsum.value, p);
  const double rhs_p = std::pow(nf.value, p) + std::pow(ng.value, p);
  cert.p_norm_slack = rhs_p - lhs_p;
  cert.p_norm_holds = lhs_p <= rhs_p * (1.0 + 1e-9) + 1e-300;
  return cert;
}

double aoki_rolewicz_power(double C) {
  if (!(C >= 1.0)) throw DomainError("quasi-triangle constant must be >= 1");
  return 1.0 / (1.0 + std::log2(C));
}

}  // namespace qgls
