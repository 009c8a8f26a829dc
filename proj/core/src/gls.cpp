#include "qgls/gls.hpp"

#include <algorithm>
#include <cmath>

#include "qgls/optimize.hpp"
#include "qgls/parallel.hpp"
#include "qgls/quadrature.hpp"
#include "qgls/tail.hpp"

namespace qgls {

double norm_value_at(const FunctionRep& f, double p, double rel_tol) {
  if (f.is_tail_defined()) {
    try {
      return norm_from_tail(f.tail_data().tail, p, rel_tol).value;
    } catch (const TailIntegralDivergent&) {
      return kInf;
    }
  }
  return lp_quasinorm(f, p, rel_tol).value;
}

namespace {

opt::SupOptions options_for(const PsiFunction::SearchRange& range) {
  opt::SupOptions options;
  options.closed_lo = range.closed_lo;
  options.closed_hi = range.closed_hi;
  return options;
}

GlsNormResult from_sup(const opt::SupResult& sup) {
  GlsNormResult out;
  out.value = sup.divergent ? kInf : sup.value;
  out.argmax_p = sup.argmax;
  out.endpoint_limit = sup.endpoint_limit;
  out.divergent = sup.divergent;
  out.profile.assign(sup.profile.begin(), sup.profile.end());
  std::sort(out.profile.begin(), out.profile.end());
  return out;
}

}  // namespace

GlsNormResult gls_norm(const FunctionRep& f, const PsiFunction& psi,
                       double rel_tol) {
  const PsiFunction::SearchRange range = psi.search_range();
  auto ratio = [&](double p) {
    const double n = norm_value_at(f, p, rel_tol);
    if (!std::isfinite(n)) return kInf;
    return n > 0.0 ? std::exp(std::log(n) - psi.log_value(p)) : 0.0;
  };
  return from_sup(
      opt::sup_over_interval(ratio, range.lo, range.hi, options_for(range)));
}

PsiFunction natural_function(const FunctionRep& f, double a, double b,
                             std::size_t grid_size, double rel_tol) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw DomainError("natural function needs 0 <= a < b <= 1");
  if (grid_size < 2) throw DomainError("natural function needs >= 2 nodes");

  const double eps = 1e-6 * (b - a);
  const double p_lo = a + eps, p_hi = b - eps;
  const double u_lo = 1.0 / p_hi, u_hi = 1.0 / p_lo;

  std::vector<double> p_nodes(grid_size), values(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double u =
        u_hi + (u_lo - u_hi) * static_cast<double>(k) / (grid_size - 1);
    p_nodes[k] = 1.0 / u;
  }
  p_nodes.front() = p_lo;  // pin the extreme nodes exactly
  p_nodes.back() = p_hi;

  for (std::size_t k = 0; k < grid_size; ++k) {
    const double v = norm_value_at(f, p_nodes[k], rel_tol);
    if (!std::isfinite(v))
      throw NormDivergent(p_nodes[k], "norm diverges inside the requested interval");
    if (!(v > 0.0))
      throw DomainError("the zero function has no natural generator");
    values[k] = v;
  }
  return PsiFunction::tabulated(std::move(p_nodes), std::move(values), a, b,
                                PsiFunction::TabulatedEnds::Clamp);
}

double fundamental_function(const PsiFunction& psi, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw DomainError("fundamental function is specified for delta in [0, 1]");
  if (delta == 0.0) return 0.0;
  const PsiFunction::SearchRange range = psi.search_range();
  const double log_delta = std::log(delta);
  auto h = [&](double p) { return log_delta / p - psi.log_value(p); };
  const opt::SupResult sup =
      opt::sup_over_interval(h, range.lo, range.hi, options_for(range));
  return std::exp(sup.value);
}

FundamentalBoundsReport fundamental_bounds_check(const PsiFunction& psi,
                                                 const std::vector<double>& deltas) {
  FundamentalBoundsReport report;
  const bool left_checked = std::isfinite(psi.sup_psi());
  report.rows.resize(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    const double d = deltas[i];
    FundamentalBoundsReport::Row row;
    row.delta = d;
    row.phi = fundamental_function(psi, d);
    row.right_bound = std::pow(d, 1.0 / psi.upper()) / psi.inf_psi();
    row.left_checked = left_checked;
    row.holds = row.phi <= row.right_bound * (1.0 + 1e-9);
    if (left_checked) {
      row.left_bound = std::pow(d, 1.0 / std::max(psi.lower(), 1e-300)) /
                       psi.sup_psi();
      row.holds = row.holds && row.left_bound <= row.phi * (1.0 + 1e-9);
    }
    report.rows[i] = row;
  });
  for (const auto& row : report.rows)
    report.all_hold = report.all_hold && row.holds;
  return report;
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, residual_rel = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  double spread = 0.0;
  const double ymin = *std::min_element(ys.begin(), ys.end());
  const double ymax = *std::max_element(ys.begin(), ys.end());
  spread = std::max(ymax - ymin, 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    rss += r * r;
  }
  fit.residual_rel = std::sqrt(rss / n) / spread;
  return fit;
}

}  // namespace

BoydEstimate boyd_indices(const PsiFunction& psi, const FunctionRep& probe,
                          const std::vector<double>& s_grid,
                          double residual_tol) {
  if (probe.space().kind() != MeasureSpace::Kind::HalfLine)
    throw DomainError("dilation probes live on the half line");
  if (!probe.is_piecewise_constant())
    throw DomainError("dilation probes must be piecewise constant");

  const PsiFunction::SearchRange range = psi.search_range();
  auto log_ratio_profile = [&](double log_s) {
    auto h = [&](double p) {
      const double ln_norm = log_lp_quasinorm_pieces(probe, p);
      return log_s / p + ln_norm - psi.log_value(p);
    };
    const opt::SupResult sup =
        opt::sup_over_interval(h, range.lo, range.hi, options_for(range));
    if (sup.divergent || !std::isfinite(sup.value))
      throw NormDivergent(sup.argmax, "probe leaves the space under dilation");
    return sup.value;
  };
  const double log_base = log_ratio_profile(0.0);
  if (!std::isfinite(log_base))
    throw DomainError("probe must have finite positive norm in the space");

  BoydEstimate est;
  est.s_grid = s_grid;
  for (double s : s_grid)
    if (!(s > 0.0)) throw DomainError("dilation factors must be positive");
  std::vector<double> log_R(s_grid.size(), 0.0);
  parallel_for(s_grid.size(), [&](std::size_t i) {
    if (s_grid[i] == 1.0) return;  // ln 0 point; excluded
    log_R[i] = log_ratio_profile(std::log(s_grid[i])) - log_base;
  });
  std::vector<std::pair<double, double>> small, large;  // (ln s, ln R)
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (s_grid[i] == 1.0) continue;
    (s_grid[i] < 1.0 ? small : large).emplace_back(std::log(s_grid[i]), log_R[i]);
  }
  if (small.size() < 3 || large.size() < 3)
    throw DomainError("need at least three factors on each side of 1");

  auto take = [](std::vector<std::pair<double, double>> pts, bool smallest) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, double>> sel;
    if (smallest)
      sel.assign(pts.begin(), pts.begin() + 3);
    else
      sel.assign(pts.end() - 3, pts.end());
    return sel;
  };

  auto fill = [&](const std::vector<std::pair<double, double>>& pts,
                  BoydEstimate::Fit& fit) {
    for (const auto& [x, y] : pts) {
      fit.log_s.push_back(x);
      fit.log_ratio.push_back(y);
    }
    const LineFit lf = fit_line(fit.log_s, fit.log_ratio);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual_rel = lf.residual_rel;
    if (fit.residual_rel > residual_tol)
      throw InsufficientDecay("dilation regression residual exceeds tolerance");
  };
  fill(take(small, true), est.small_s);   // most negative ln s: s -> 0
  fill(take(large, false), est.large_s);  // largest ln s: s -> inf
  est.gamma1 = est.small_s.slope;
  est.gamma2 = est.large_s.slope;
  return est;
}

namespace {

// n * f * 1_{[lo,hi)} as a Sampled representation (piecewise f only).
FunctionRep make_piece_rep(const FunctionRep& f, double lo, double hi,
                           double n) {
  std::vector<double> cuts{lo};
  if (f.is_sampled()) {
    for (double gpt : f.sampled_data().grid)
      if (gpt > lo && gpt < hi) cuts.push_back(gpt);
  } else {
    for (const Interval& iv : f.indicator_data().set) {
      if (iv.lo > lo && iv.lo < hi) cuts.push_back(iv.lo);
      if (iv.hi > lo && iv.hi < hi) cuts.push_back(iv.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  if (cuts.size() < 2 && !(hi < 1.0)) cuts.push_back(0.5 * (lo + hi));
  std::vector<double> values;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    const double cell_hi = j + 1 < cuts.size() ? cuts[j + 1] : hi;
    values.push_back(n * f.evaluate(0.5 * (cuts[j] + cell_hi)));
  }
  if (hi < 1.0) {
    cuts.push_back(hi);
    values.push_back(0.0);
  }
  return FunctionRep::sampled(std::move(cuts), std::move(values), f.space());
}

// ln || n f 1_{[lo,hi)} ||_p for analytic f; the leftmost cell touches the
// singular endpoint, where the log substitution applies.
double log_piece_norm_analytic(const FunctionRep& f, double lo, double hi,
                               double n, double p, double rel_tol) {
  const double integral_tol = std::max(0.5 * rel_tol * p, 1e-14);
  auto gp = [&](double x) {
    const double v = std::abs(f.evaluate(x));
    return v > 0.0 ? std::exp(p * (std::log(n) + std::log(v))) : 0.0;
  };
  if (lo > 0.0) {
    quad::Result r = quad::integrate_finite(gp, lo, hi, integral_tol);
    if (!r.converged)
      throw QuadratureNoConvergence("piece norm integral stalled before tolerance");
    return r.value > 0.0 ? std::log(r.value) / p : -kInf;
  }
  const double Delta = f.power_log_data().params.Delta;
  auto integrand = [&](double t) {
    const double x = std::exp(-t);
    return x < hi ? gp(x) * x : 0.0;
  };
  const double lambda = 1.0 - p * Delta;
  const double start = -std::log(hi);
  quad::TailResult r = quad::integrate_decaying(
      integrand, start, integral_tol,
      lambda > 0.0 ? (45.0 + p * std::log1p(start)) / lambda : 16.0);
  if (r.divergent) return kInf;
  if (!r.res.converged)
    throw QuadratureNoConvergence("piece norm integral stalled before tolerance");
  return r.res.value > 0.0 ? std::log(r.res.value) / p : -kInf;
}

}  // namespace

CollapseReport collapse_demo(const FunctionRep& f, const PsiFunction& psi,
                             const std::vector<std::size_t>& n_list,
                             double rel_tol) {
  if (f.space().kind() != MeasureSpace::Kind::UnitInterval)
    throw DomainError("the partition demonstration needs an atomless space");
  if (!(psi.upper() < 1.0))
    throw DomainError("the partition demonstration needs b < 1");
  const GlsNormResult base = gls_norm(f, psi, rel_tol);
  if (base.divergent || !std::isfinite(base.value))
    throw NormDivergent(0.0, "the function must have finite norm in the space");

  CollapseReport report;
  report.f_gls_norm = base.value;
  report.psi_inf = psi.inf_psi();
  const PsiFunction::SearchRange range = psi.search_range();

  const bool piecewise = f.is_piecewise_constant();
  for (std::size_t n : n_list) {
    if (n == 0) throw DomainError("partition size must be positive");
    std::vector<FunctionRep> piece_reps;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      if (piecewise)
        piece_reps.push_back(make_piece_rep(f, lo, hi, static_cast<double>(n)));
      auto ratio = [&](double p) {
        const double ln =
            piecewise ? log_lp_quasinorm_pieces(piece_reps.back(), p)
                      : log_piece_norm_analytic(f, lo, hi,
                                                static_cast<double>(n), p,
                                                rel_tol);
        if (ln == kInf) return kInf;
        return std::exp(ln - psi.log_value(p));
      };
      const opt::SupResult sup = opt::sup_over_interval(
          ratio, range.lo, range.hi, options_for(range));
      worst = std::max(worst, sup.value);
      if (sup.divergent) worst = kInf;
    }
    const double bound = std::pow(static_cast<double>(n), 1.0 - 1.0 / psi.upper()) *
                         report.f_gls_norm / report.psi_inf;
    report.n_values.push_back(n);
    report.max_piece_norms.push_back(worst);
    report.upper_bounds.push_back(bound);
    report.bounds_hold = report.bounds_hold && worst <= bound * (1.0 + 1e-9);

    // Pointwise reconstruction f = (1/n) sum_i g_{i,n} on an interior grid,
    // summing the actual piece objects.
    double worst_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double x = (k + 0.5) / 1000.0;
      const double fx = f.evaluate(x);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (piecewise) {
          sum += piece_reps[i].evaluate(x);
        } else {
          const double lo = static_cast<double>(i) / n;
          const double hi = static_cast<double>(i + 1) / n;
          if (x >= lo && x < hi) sum += static_cast<double>(n) * fx;
        }
      }
      worst_err = std::max(worst_err, std::abs(fx - sum / static_cast<double>(n)));
    }
    report.max_reconstruction_error =
        std::max(report.max_reconstruction_error, worst_err);
  }
  return report;
}

}  // namespace qgls
