#include "qgls/tail_function.hpp"

#include <algorithm>
#include <cmath>

namespace qgls {

TailFunction TailFunction::step(Step s) {
  if (s.thresholds.size() != s.measure_above.size())
    throw DomainError("step tail needs matching thresholds/measures");
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    if (!(s.thresholds[i] > 0.0))
      throw DomainError("step tail thresholds must be positive");
    if (i > 0) {
      if (!(s.thresholds[i] > s.thresholds[i - 1]))
        throw DomainError("step tail thresholds must be strictly increasing");
      if (s.measure_above[i] > s.measure_above[i - 1])
        throw DomainError("step tail must be nonincreasing");
    }
  }
  return TailFunction(std::move(s));
}

namespace {

// ln f(t) for the decreasing power-log family, t = |ln x|.
double power_log_log_value(const PowerLogParams& p, double t) {
  return std::log(p.scale) + p.Delta * t + p.delta * std::log(t) +
         p.slowly_varying.log_value(t);
}

double inverted_tail(const TailFunction::Inverted& inv, double u) {
  const PowerLogParams& p = inv.params;
  if (p.scale == 0.0) return 0.0;
  const double log_u = std::log(u);
  // Value as x -> 1 (t -> 0+): 0 when delta > 0, scale otherwise.
  if (p.delta == 0.0 && log_u <= std::log(p.scale) + p.slowly_varying.log_value(1e-300))
    return std::min(inv.mass, 1.0);

  // Solve ln f(t) = ln u; ln f is increasing in t for the shipped families.
  double lo = 1e-300, hi = 1.0;
  if (power_log_log_value(p, lo) >= log_u) return std::min(inv.mass, 1.0);
  while (power_log_log_value(p, hi) < log_u) {
    hi *= 2.0;
    if (hi > 1e9) return 0.0;  // u beyond any representable super-level set
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (power_log_log_value(p, mid) < log_u)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  const double t_u = 0.5 * (lo + hi);
  return std::min(inv.mass, std::exp(-t_u));
}

}  // namespace

double TailFunction::operator()(double u) const {
  if (!(u > 0.0)) throw DomainError("tail function is defined for u > 0");
  if (is_analytic()) {
    const Analytic& a = analytic_params();
    const double lx = std::log(u);
    const double at_e = std::exp(a.log_value_from_log(1.0));
    if (lx < 1.0) return std::min(a.mass, at_e);
    return std::min(a.mass, std::exp(a.log_value_from_log(lx)));
  }
  if (is_step()) {
    const Step& s = step_data();
    auto it = std::lower_bound(s.thresholds.begin(), s.thresholds.end(), u);
    if (it == s.thresholds.end()) return 0.0;
    return s.measure_above[static_cast<std::size_t>(it - s.thresholds.begin())];
  }
  return inverted_tail(inverted_data(), u);
}

double TailFunction::mass() const {
  if (is_analytic()) return analytic_params().mass;
  if (is_step()) return step_data().mass;
  return inverted_data().mass;
}

}  // namespace qgls
