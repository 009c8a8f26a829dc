#include "qgls/tail.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qgls/optimize.hpp"
#include "qgls/quadrature.hpp"

namespace qgls {

namespace {

TailFunction step_tail_from_pieces(const FunctionRep& f) {
  std::map<double, double> measure_at;  // magnitude -> measure of that level
  for (const Piece& pc : f.pieces()) {
    const double mag = std::abs(pc.value);
    if (mag == 0.0 || pc.measure <= 0.0) continue;
    if (!std::isfinite(pc.measure))
      throw DomainError("tail of a function that is nonzero on infinite measure");
    measure_at[mag] += pc.measure;
  }
  TailFunction::Step s;
  s.mass = f.space().total_mass();
  s.thresholds.reserve(measure_at.size());
  s.measure_above.assign(measure_at.size(), 0.0);
  for (const auto& [mag, len] : measure_at) s.thresholds.push_back(mag);
  double cum = 0.0;
  for (std::size_t j = measure_at.size(); j-- > 0;) {
    cum += measure_at[s.thresholds[j]];
    s.measure_above[j] = cum;
  }
  return TailFunction::step(std::move(s));
}

}  // namespace

TailFunction tail_of(const FunctionRep& f, const std::vector<double>& u_grid) {
  if (f.is_tail_defined())
    throw EvaluationUnsupported("input already is a tail; nothing to measure");
  for (double u : u_grid)
    if (!(u > 0.0)) throw DomainError("tail evaluation points must be positive");

  TailFunction tail = [&]() {
    if (f.is_piecewise_constant()) return step_tail_from_pieces(f);
    const auto& params = f.power_log_data().params;
    return TailFunction::inverted({params, f.space().total_mass()});
  }();
  for (double u : u_grid) (void)tail(u);  // probe the requested points
  return tail;
}

namespace {

// p * integral_0^inf u^{p-1} T(u) du for a step tail, exactly:
// sum over constant plateaus of T * (u_hi^p - u_lo^p).
double step_moment(const TailFunction::Step& s, double p) {
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < s.thresholds.size(); ++j) {
    total += s.measure_above[j] *
             (std::pow(s.thresholds[j], p) - std::pow(prev, p));
    prev = s.thresholds[j];
  }
  return total;
}

struct LogMoment {
  double log_value;
  double rel_error;
};

// ln[ p * integral u^{p-1} T(u) du ] for analytic and inverted tails.
LogMoment log_moment_integral(const TailFunction& tail, double p,
                              double rel_tol) {
  const double integral_tol = std::max(0.25 * rel_tol * p, 1e-14);
  if (tail.is_analytic()) {
    const TailFunction::Analytic& a = tail.analytic_params();
    const double flat = std::min(a.mass, std::exp(a.log_value_from_log(1.0)));
    // Flat part below e: p * integral_0^e u^{p-1} flat du = flat * e^p.
    const double lower = flat * std::exp(p);
    // Upper part, u = e^y:  p * C * integral_1^inf e^{-y(b-p)} y^gamma L(y) dy,
    // with the flat cap T <= mass respected piecewise.
    const double lambda = a.exponent - p;
    if (!(lambda > 0.0))
      throw TailIntegralDivergent("tail moment diverges at this exponent");
    auto integrand = [&](double y) {
      if (y < 1.0) return 0.0;
      const double log_t = std::min(std::log(a.mass),
                                    a.log_value_from_log(y));
      return std::exp(log_t + p * y);
    };
    double window = (45.0 + a.log_exponent * std::log(45.0 / lambda + 2.0)) / lambda;
    quad::TailResult r =
        quad::integrate_decaying(integrand, 1.0, integral_tol, window);
    if (r.divergent) throw TailIntegralDivergent("tail moment integral grows without bound");
    if (!r.res.converged)
      throw QuadratureNoConvergence("tail moment integral stalled before tolerance");
    const double total = lower + p * r.res.value;
    return {std::log(total), (p * r.res.abs_error) / total};
  }

  // Inverted tail: T decays like u^{-1/Delta} (up to logs); split at u = 1.
  const TailFunction::Inverted& inv = tail.inverted_data();
  const double lambda = 1.0 / inv.params.Delta - p;
  if (!(lambda > 0.0) && p >= 1.0 / inv.params.Delta)
    throw TailIntegralDivergent("tail moment diverges at this exponent");
  auto lower_fn = [&](double u) {
    return u > 0.0 ? std::pow(u, p - 1.0) * tail(u) : 0.0;
  };
  quad::Result lo = quad::integrate_finite(lower_fn, 0.0, 1.0, integral_tol);
  auto upper_fn = [&](double y) {  // u = e^y
    const double u = std::exp(y);
    return std::isfinite(u) ? tail(u) * std::exp(p * y) : 0.0;
  };
  quad::TailResult hi = quad::integrate_decaying(
      upper_fn, 0.0, integral_tol, (50.0 + inv.params.delta) / std::max(lambda, 1e-12));
  if (hi.divergent) throw TailIntegralDivergent("tail moment integral grows without bound");
  if (!lo.converged || !hi.res.converged)
    throw QuadratureNoConvergence("tail moment integral stalled before tolerance");
  const double total = p * (lo.value + hi.res.value);
  return {std::log(total), p * (lo.abs_error + hi.res.abs_error) / total};
}

}  // namespace

double log_norm_from_tail(const TailFunction& tail, double p, double rel_tol) {
  if (!(p > 0.0 && p <= 1.0))
    throw DomainError("tail norm exponent must lie in (0, 1]");
  if (tail.is_step()) {
    const double m = step_moment(tail.step_data(), p);
    return m > 0.0 ? std::log(m) / p : -kInf;
  }
  return log_moment_integral(tail, p, rel_tol).log_value / p;
}

NormResult norm_from_tail(const TailFunction& tail, double p, double rel_tol) {
  if (!(p > 0.0 && p <= 1.0))
    throw DomainError("tail norm exponent must lie in (0, 1]");
  NormResult out;
  out.p = p;
  if (tail.is_step()) {
    const double m = step_moment(tail.step_data(), p);
    out.value = m > 0.0 ? std::exp(std::log(m) / p) : 0.0;
    return out;
  }
  const LogMoment lm = log_moment_integral(tail, p, rel_tol);
  out.value = std::exp(lm.log_value / p);
  out.abs_error_estimate = out.value * lm.rel_error / p;
  out.converged = out.abs_error_estimate <= rel_tol * out.value;
  if (!out.converged)
    throw QuadratureNoConvergence("tail norm error estimate exceeds tolerance");
  return out;
}

namespace {

// inf over the generator's exponent range of exp(h(p)) in log space.
opt::SupResult log_space_inf(const std::function<double(double)>& h,
                             const PsiFunction& psi) {
  const PsiFunction::SearchRange range = psi.search_range();
  opt::SupOptions options;
  options.closed_lo = range.closed_lo;
  options.closed_hi = range.closed_hi;
  return opt::inf_over_interval(h, range.lo, range.hi, options);
}

}  // namespace

TailBoundReport tcheby_tail_bound(double gls_norm_value, const PsiFunction& psi,
                                  const std::vector<double>& u_grid,
                                  const std::optional<PsiFunction>& natural_fn,
                                  const std::optional<TailFunction>& exact_tail) {
  if (!(gls_norm_value >= 0.0) || !std::isfinite(gls_norm_value))
    throw DomainError("tail bound needs a finite Grand-Lebesgue norm");
  TailBoundReport report;
  const double log_gls = gls_norm_value > 0.0 ? std::log(gls_norm_value) : -kInf;
  for (double u : u_grid) {
    if (!(u > 0.0)) throw DomainError("tail bound abscissae must be positive");
    const double log_u = std::log(u);

    auto outer = [&](double p) { return p * (log_gls + psi.log_value(p) - log_u); };
    const double log_outer = log_space_inf(outer, psi).value;

    double log_bound = log_outer;
    if (natural_fn) {
      auto inner = [&](double p) {
        return p * (natural_fn->log_value(p) - log_u);
      };
      const double log_inner = log_space_inf(inner, *natural_fn).value;
      report.inner_bound.push_back(std::exp(log_inner));
      log_bound = std::min(log_bound, log_inner);
    }

    report.u_grid.push_back(u);
    report.log_u.push_back(log_u);
    report.tcheby_bound.push_back(std::exp(log_outer));
    report.log_bound.push_back(log_bound);
    if (exact_tail) {
      const double t = (*exact_tail)(u);
      report.exact_or_empirical_tail.push_back(t);
      report.log_tail.push_back(t > 0.0 ? std::log(t) : -kInf);
      report.gap_ratio.push_back(t > 0.0 ? std::exp(log_bound - std::log(t)) : kInf);
    }
  }
  return report;
}

PsiFunction tail_model_psi(double b, double gamma, SlowlyVarying sv) {
  return PsiFunction::tail_model(b, gamma, sv);
}

TailBoundReport optimal_p_tail_estimate(const TailFunction::Analytic& params,
                                        double c,
                                        const std::vector<double>& log_x_grid,
                                        double rel_tol) {
  params.validate();
  if (!(c > 0.0)) throw DomainError("exponent offset constant must be positive");
  const TailFunction tail = TailFunction::analytic(params);
  const double b = params.exponent;

  TailBoundReport report;
  for (double lx : log_x_grid) {
    if (!(lx >= 1.0)) throw DomainError("tail estimate abscissae need x >= e");
    const double p = b - c / lx;
    if (!(p > 0.0 && p < b))
      throw DomainError("exponent choice p = b - c/ln x left (0, b)");

    const double log_norm = log_norm_from_tail(tail, p, rel_tol);
    const double log_bound = p * (log_norm - lx);  // ln [ ||f||_p^p x^{-p} ]
    const double log_t =
        lx >= 1.0 ? std::min(std::log(params.mass), params.log_value_from_log(lx))
                  : 0.0;

    report.u_grid.push_back(std::exp(lx));  // may overflow to +inf; log kept
    report.log_u.push_back(lx);
    report.exact_or_empirical_tail.push_back(std::exp(log_t));
    report.log_tail.push_back(log_t);
    report.optimal_p_bound.push_back(std::exp(log_bound));
    report.tcheby_bound.push_back(std::exp(log_bound));
    report.log_bound.push_back(log_bound);
    report.gap_ratio.push_back(std::exp(log_bound - log_t));
  }
  return report;
}

TailBoundReport optimal_p_tail_estimate_x(const TailFunction::Analytic& params,
                                          double c,
                                          const std::vector<double>& x_grid,
                                          double rel_tol) {
  std::vector<double> lx;
  lx.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x >= std::exp(1.0))) throw DomainError("tail estimate abscissae need x >= e");
    lx.push_back(std::log(x));
  }
  return optimal_p_tail_estimate(params, c, lx, rel_tol);
}

double gap_law_slope(const TailBoundReport& report) {
  const std::size_t n = report.gap_ratio.size();
  if (n < 2) throw DomainError("gap slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(report.log_u[i]);  // ln ln x
    const double y = std::log(report.gap_ratio[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace qgls
