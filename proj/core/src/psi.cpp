#include "qgls/psi.hpp"

#include <algorithm>
#include <cmath>

#include "qgls/optimize.hpp"

namespace qgls {

namespace {

void check_interval(double a, double b, bool allow_zero_a) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw DomainError("generator interval must satisfy 0 <= a < b <= 1");
  if (!allow_zero_a && !(a > 0.0))
    throw DomainError("generator interval must satisfy a > 0");
}

// Stationarity equation of ln[(b-p)^{-theta/p}]:    p/(b-p) + ln(b-p) = 0.
// The left side is strictly increasing in p, so the singular family has at
// most one interior minimum.
double stationary_point(double b) {
  auto h = [b](double p) { return p / (b - p) + std::log(b - p); };
  double lo = b * 1e-12, hi = b * (1.0 - 1e-12);
  if (h(lo) >= 0.0) return lo;  // increasing on all of (0,b)
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * b) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PsiFunction PsiFunction::constant(double c, double a, double b) {
  check_interval(a, b, true);
  if (!(c > 0.0)) throw DomainError("constant generator must be positive");
  PsiFunction psi(Kind::Constant, a, b);
  psi.param1_ = c;
  psi.finalize_extrema();
  return psi;
}

PsiFunction PsiFunction::iwaniec_sbordone(double theta, double a, double b) {
  check_interval(a, b, false);
  if (!(theta >= 0.0)) throw DomainError("singular generator needs theta >= 0");
  PsiFunction psi(Kind::IwaniecSbordone, a, b);
  psi.param1_ = theta;
  psi.finalize_extrema();
  return psi;
}

PsiFunction PsiFunction::bandaliyev(double b) {
  if (!(b > 0.0 && b <= 1.0)) throw DomainError("bandaliyev generator needs b in (0,1]");
  PsiFunction psi(Kind::Bandaliyev, b / 2.0, b);
  psi.param1_ = 1.0;
  psi.finalize_extrema();
  return psi;
}

PsiFunction PsiFunction::tail_model(double b, double gamma, SlowlyVarying sv) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("tail-model generator needs b in (0,1)");
  if (!(gamma >= 0.0)) throw DomainError("tail-model generator needs gamma >= 0");
  PsiFunction psi(Kind::TailModel, 0.0, b);
  psi.param1_ = gamma;
  psi.sv_ = sv;
  psi.finalize_extrema();
  return psi;
}

PsiFunction PsiFunction::tabulated(std::vector<double> p_nodes,
                                   std::vector<double> values, double a,
                                   double b, TabulatedEnds ends) {
  check_interval(a, b, true);
  if (p_nodes.size() < 2 || p_nodes.size() != values.size())
    throw DomainError("tabulated generator needs >= 2 matching nodes");
  for (std::size_t i = 0; i < p_nodes.size(); ++i) {
    if (!(p_nodes[i] > a && p_nodes[i] < b))
      throw DomainError("tabulated nodes must lie inside (a,b)");
    if (i > 0 && !(p_nodes[i] > p_nodes[i - 1]))
      throw DomainError("tabulated nodes must be strictly increasing");
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw DomainError("tabulated generator values must be positive and finite");
  }
  PsiFunction psi(Kind::Tabulated, a, b);
  psi.p_nodes_ = std::move(p_nodes);
  psi.log_values_.reserve(values.size());
  for (double v : values) psi.log_values_.push_back(std::log(v));
  psi.ends_ = ends;
  psi.finalize_extrema();
  return psi;
}

double PsiFunction::log_value(double p) const {
  if (!(p > a_ && p < b_))
    throw PsiDomainError("generator evaluated outside its open interval");
  switch (kind_) {
    case Kind::Constant:
      return std::log(param1_);
    case Kind::IwaniecSbordone:
    case Kind::Bandaliyev: {
      const double theta = kind_ == Kind::Bandaliyev ? 1.0 : param1_;
      return -(theta / p) * std::log(b_ - p);
    }
    case Kind::TailModel: {
      const double y = 1.0 / (b_ - p);
      return -((param1_ + 1.0) / b_) * std::log(b_ - p) +
             sv_.log_value(y) / b_;
    }
    case Kind::Tabulated: {
      const auto& ps = p_nodes_;
      if (p <= ps.front()) {
        if (ends_ == TabulatedEnds::Clamp) return log_values_.front();
        // extend log-linearly in u = 1/p using the first segment
        const double u = 1.0 / p, u0 = 1.0 / ps[0], u1 = 1.0 / ps[1];
        const double w = (u - u0) / (u1 - u0);
        return (1.0 - w) * log_values_[0] + w * log_values_[1];
      }
      if (p >= ps.back()) {
        if (ends_ == TabulatedEnds::Clamp) return log_values_.back();
        const std::size_t n = ps.size();
        const double u = 1.0 / p, u0 = 1.0 / ps[n - 2], u1 = 1.0 / ps[n - 1];
        const double w = (u - u0) / (u1 - u0);
        return (1.0 - w) * log_values_[n - 2] + w * log_values_[n - 1];
      }
      auto it = std::upper_bound(ps.begin(), ps.end(), p);
      const std::size_t j = static_cast<std::size_t>(it - ps.begin());
      const double u = 1.0 / p, u0 = 1.0 / ps[j - 1], u1 = 1.0 / ps[j];
      const double w = (u - u0) / (u1 - u0);
      return (1.0 - w) * log_values_[j - 1] + w * log_values_[j];
    }
  }
  throw Error("unreachable generator kind");
}

void PsiFunction::finalize_extrema() {
  switch (kind_) {
    case Kind::Constant:
      inf_ = sup_ = param1_;
      break;
    case Kind::IwaniecSbordone:
    case Kind::Bandaliyev: {
      const double theta = kind_ == Kind::Bandaliyev ? 1.0 : param1_;
      if (theta == 0.0) {
        inf_ = sup_ = 1.0;
        break;
      }
      auto value_at = [&](double p) {
        return std::exp(-(theta / p) * std::log(b_ - p));
      };
      // The log-profile decreases left of the stationary point and increases
      // right of it; on (a,b) the infimum sits at max(a, pstar).  The limit
      // at a is finite, the limit at b is +inf.
      const double pstar = stationary_point(b_);
      inf_ = pstar > a_ ? value_at(pstar) : value_at(a_);
      sup_ = kInf;
      break;
    }
    case Kind::TailModel: {
      const double gamma = param1_;
      auto lv = [&](double p) {
        const double y = 1.0 / (b_ - p);
        return -((gamma + 1.0) / b_) * std::log(b_ - p) + sv_.log_value(y) / b_;
      };
      if (sv_.kind() == SlowlyVarying::Kind::One || sv_.kappa() >= 0.0) {
        inf_ = std::exp(lv(0.0));  // increasing on (0,b); limit at p -> 0+
      } else {
        opt::GoldenResult g = opt::golden_max(
            [&](double p) { return -lv(p); }, b_ * 1e-9, b_ * (1.0 - 1e-9),
            b_ * 1e-10, 500);
        inf_ = std::exp(std::min(-g.fx, std::min(lv(0.0), lv(b_ * (1.0 - 1e-12)))));
      }
      sup_ = kInf;
      break;
    }
    case Kind::Tabulated: {
      inf_ = std::exp(*std::min_element(log_values_.begin(), log_values_.end()));
      sup_ = std::exp(*std::max_element(log_values_.begin(), log_values_.end()));
      break;
    }
  }
  if (!(inf_ > 0.0))
    throw DomainError("generator must have strictly positive infimum");
}

PsiFunction::SearchRange PsiFunction::search_range() const {
  if (kind_ == Kind::Tabulated && ends_ == TabulatedEnds::Clamp)
    return {p_nodes_.front(), p_nodes_.back(), true, true};
  return {a_, b_, false, false};
}

PsiFunction PsiFunction::scaled_by(const std::function<double(double)>& log_factor,
                                   const std::vector<double>& p_nodes) const {
  std::vector<double> values;
  values.reserve(p_nodes.size());
  for (double p : p_nodes) values.push_back(std::exp(log_value(p) + log_factor(p)));
  return tabulated(p_nodes, values, a_, b_, TabulatedEnds::Extend);
}

}  // namespace qgls
