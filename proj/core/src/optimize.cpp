#include "qgls/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgls/errors.hpp"

namespace qgls::opt {

namespace {
constexpr double kInvPhi = 0.6180339887498948482;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double x_tol, std::size_t max_iter) {
  GoldenResult out;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  out.evals = 2;
  while (b - a > x_tol && out.evals < max_iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++out.evals;
  }
  if (fc > fd) {
    out.x = c;
    out.fx = fc;
  } else {
    out.x = d;
    out.fx = fd;
  }
  return out;
}

double neville_at_zero(std::vector<double> xs, std::vector<double> ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw Error("neville: bad point set");
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      ys[i] = (-xs[i + m] * ys[i] + xs[i] * ys[i + 1]) / (xs[i] - xs[i + m]);
    }
  }
  return ys[0];
}

namespace {

// Endpoint-limit handling: evaluates g on a shrinking offset ladder toward
// `endpoint`, decides divergence vs convergence, and extrapolates.
void endpoint_estimate(const std::function<double(double)>& g, double endpoint,
                       double eps0, int levels, double side, SupResult& result) {
  std::vector<double> eps_list, values;
  double eps = eps0;
  for (int l = 0; l < std::max(levels, 3); ++l) {
    const double x = endpoint + side * eps;
    const double v = g(x);
    result.profile.emplace_back(x, v);
    if (!std::isfinite(v)) {
      result.divergent = true;
      result.endpoint_limit = true;
      result.value = kInf;
      result.argmax = endpoint;
      return;
    }
    eps_list.push_back(eps);
    values.push_back(v);
    eps *= 0.1;
  }
  const std::size_t n = values.size();
  const double d1 = values[n - 2] - values[n - 3];
  const double d2 = values[n - 1] - values[n - 2];
  const bool increasing = values[n - 1] > values[n - 2] &&
                          values[n - 2] > values[n - 3];
  if (increasing && d2 > 0.75 * d1 && d2 > 0.0) {
    // No contraction toward a limit: the profile keeps growing as the
    // offset shrinks a decade per level.
    result.divergent = true;
    result.endpoint_limit = true;
    result.value = kInf;
    result.argmax = endpoint;
    return;
  }
  const double extrapolated = neville_at_zero(eps_list, values);
  double best = extrapolated;
  for (double v : values) best = std::max(best, v);
  if (best > result.value) {
    result.value = best;
    result.argmax = endpoint;
    result.endpoint_limit = true;
  }
}

}  // namespace

SupResult sup_over_interval(const std::function<double(double)>& g, double lo,
                            double hi, const SupOptions& options) {
  if (!(hi > lo)) throw DomainError("sup search needs a nonempty interval");
  SupResult result;
  const double span = hi - lo;
  const double eps_lo = options.closed_lo ? 0.0 : options.eps_rel * span;
  const double eps_hi = options.closed_hi ? 0.0 : options.eps_rel * span;
  const double glo = lo + eps_lo;
  const double ghi = hi - eps_hi;
  const int n = std::max(options.coarse_points, 5);

  std::vector<double> xs(static_cast<std::size_t>(n)), vs(xs.size());
  std::size_t kbest = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    xs[k] = glo + (ghi - glo) * static_cast<double>(k) / (n - 1);
    vs[k] = g(xs[k]);
    result.profile.emplace_back(xs[k], vs[k]);
    if (std::isnan(vs[k])) throw Error("sup search: NaN profile value");
    if (vs[k] > vs[kbest]) kbest = k;
  }
  if (!std::isfinite(vs[kbest])) {
    result.value = kInf;
    result.argmax = xs[kbest];
    result.divergent = true;
    return result;
  }

  const double x_tol = options.x_tol_rel * span;
  const std::size_t last = xs.size() - 1;
  const double blo = xs[kbest == 0 ? 0 : kbest - 1];
  const double bhi = xs[kbest == last ? last : kbest + 1];
  GoldenResult gr = golden_max(g, blo, bhi, x_tol);
  result.profile.emplace_back(gr.x, gr.fx);
  result.value = std::max(gr.fx, vs[kbest]);
  result.argmax = gr.fx > vs[kbest] ? gr.x : xs[kbest];

  const bool hugs_hi = kbest == last && bhi - gr.x <= 4.0 * x_tol;
  const bool hugs_lo = kbest == 0 && gr.x - blo <= 4.0 * x_tol;
  if (hugs_hi && !options.closed_hi && options.extrapolate_hi) {
    endpoint_estimate(g, hi, eps_hi, options.extrap_levels, -1.0, result);
  } else if (hugs_lo && !options.closed_lo && options.extrapolate_lo) {
    endpoint_estimate(g, lo, eps_lo, options.extrap_levels, +1.0, result);
  } else if ((hugs_hi && !options.closed_hi) || (hugs_lo && !options.closed_lo)) {
    result.endpoint_limit = true;
  }

  for (const auto& [x, v] : result.profile)
    if (std::isfinite(v) && v > result.value) {
      result.value = v;
      result.argmax = x;
    }
  return result;
}

SupResult inf_over_interval(const std::function<double(double)>& g, double lo,
                            double hi, const SupOptions& options) {
  SupResult flipped = sup_over_interval(
      [&g](double x) { return -g(x); }, lo, hi, options);
  flipped.value = -flipped.value;
  for (auto& [x, v] : flipped.profile) v = -v;
  return flipped;
}

}  // namespace qgls::opt
