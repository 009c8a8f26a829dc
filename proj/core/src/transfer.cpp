#include "qgls/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "qgls/gls.hpp"
#include "qgls/parallel.hpp"

namespace qgls {

OperatorBoundProfile OperatorBoundProfile::constant(double c, double a, double b) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw DomainError("operator bound must be positive and finite");
  OperatorBoundProfile theta(Kind::Constant, a, b);
  theta.param_ = c;
  return theta;
}

OperatorBoundProfile OperatorBoundProfile::power_of_s(double s, double a, double b) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw DomainError("dilation factor must be positive and finite");
  OperatorBoundProfile theta(Kind::PowerOfS, a, b);
  theta.param_ = s;
  return theta;
}

OperatorBoundProfile OperatorBoundProfile::tabulated(std::vector<double> p_nodes,
                                                     std::vector<double> values,
                                                     double a, double b) {
  if (p_nodes.size() < 2 || p_nodes.size() != values.size())
    throw DomainError("tabulated bound needs >= 2 matching nodes");
  for (std::size_t i = 0; i < p_nodes.size(); ++i) {
    if (!(p_nodes[i] > a && p_nodes[i] < b))
      throw DomainError("tabulated bound nodes must lie inside (a,b)");
    if (i > 0 && !(p_nodes[i] > p_nodes[i - 1]))
      throw DomainError("tabulated bound nodes must be strictly increasing");
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw DomainError("tabulated bound values must be positive and finite");
  }
  OperatorBoundProfile theta(Kind::Tabulated, a, b);
  theta.p_nodes_ = std::move(p_nodes);
  theta.values_ = std::move(values);
  return theta;
}

std::string OperatorBoundProfile::kind_name() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant";
    case Kind::PowerOfS:
      return "power_of_s";
    case Kind::Tabulated:
      return "tabulated";
  }
  return "?";
}

double OperatorBoundProfile::log_value(double p) const {
  if (!(p > a_ && p < b_))
    throw DomainError("operator bound evaluated outside its interval");
  switch (kind_) {
    case Kind::Constant:
      return std::log(param_);
    case Kind::PowerOfS:
      return std::log(param_) / p;
    case Kind::Tabulated: {
      const auto& ps = p_nodes_;
      std::size_t j;
      if (p <= ps.front())
        j = 1;
      else if (p >= ps.back())
        j = ps.size() - 1;
      else
        j = static_cast<std::size_t>(
            std::upper_bound(ps.begin(), ps.end(), p) - ps.begin());
      const double u = 1.0 / p, u0 = 1.0 / ps[j - 1], u1 = 1.0 / ps[j];
      const double w = (u - u0) / (u1 - u0);
      return (1.0 - w) * std::log(values_[j - 1]) + w * std::log(values_[j]);
    }
  }
  throw Error("unreachable bound kind");
}

PsiFunction transfer_psi(const OperatorBoundProfile& theta,
                         const PsiFunction& psi) {
  if (theta.lower() != psi.lower() || theta.upper() != psi.upper())
    throw DomainMismatch("bound profile and generator intervals differ");
  if (theta.kind() == OperatorBoundProfile::Kind::Constant &&
      theta.constant_value() == 1.0)
    return psi;

  std::vector<double> nodes;
  if (psi.kind() == PsiFunction::Kind::Tabulated) {
    nodes = psi.p_nodes();
  } else if (theta.kind() == OperatorBoundProfile::Kind::Tabulated) {
    nodes = theta.p_nodes();
  } else {
    const double a = psi.lower(), b = psi.upper();
    const double eps = 1e-6 * (b - a);
    const double u_lo = 1.0 / (b - eps), u_hi = 1.0 / (a + eps);
    const std::size_t n = 257;
    nodes.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = u_hi + (u_lo - u_hi) * static_cast<double>(k) / (n - 1);
      nodes[k] = 1.0 / u;
    }
    nodes.front() = a + eps;
    nodes.back() = b - eps;
  }
  PsiFunction product = psi.scaled_by(
      [&theta](double p) { return theta.log_value(p); }, nodes);
  return product;
}

ConcreteOperator identity_operator() {
  return {"identity", [](const FunctionRep& f) { return f; }};
}

ConcreteOperator dilation_operator(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw DomainError("dilation factor must be positive and finite");
  return {"dilation", [s](const FunctionRep& f) -> FunctionRep {
            if (f.space().kind() != MeasureSpace::Kind::HalfLine)
              throw DomainError("dilation acts on half-line representations");
            if (f.is_indicator()) {
              std::vector<Interval> set;
              for (const Interval& iv : f.indicator_data().set)
                set.push_back({iv.lo * s, iv.hi * s});
              return FunctionRep::indicator(std::move(set), f.space());
            }
            if (f.is_sampled()) {
              std::vector<double> grid = f.sampled_data().grid;
              for (double& x : grid) x *= s;
              return FunctionRep::sampled(std::move(grid),
                                          f.sampled_data().values, f.space());
            }
            throw EvaluationUnsupported("dilation needs a piecewise representation");
          }};
}

ConcreteOperator scaling_operator(double w) {
  return {"scaling", [w](const FunctionRep& f) { return f.scaled(w); }};
}

TransferReport verify_transfer_norm(
    const ConcreteOperator& op, const OperatorBoundProfile& theta,
    const PsiFunction& psi,
    const std::vector<std::pair<std::string, FunctionRep>>& corpus,
    double rel_tol, double bound_tol) {
  if (theta.lower() != psi.lower() || theta.upper() != psi.upper())
    throw DomainMismatch("bound profile and generator intervals differ");
  const PsiFunction::SearchRange range = psi.search_range();

  // Spot-check the claimed per-exponent bound before transferring it.
  for (const auto& [id, f] : corpus) {
    const FunctionRep mapped = op.apply(f);
    for (int k = 0; k < 9; ++k) {
      const double p =
          range.lo + (range.hi - range.lo) * (k + 0.5) / 9.0;
      const double nf = norm_value_at(f, p, rel_tol);
      const double nu = norm_value_at(mapped, p, rel_tol);
      if (!std::isfinite(nf) || !std::isfinite(nu))
        throw NormDivergent(p, "corpus member leaves the space");
      if (nu > std::exp(theta.log_value(p)) * nf * (1.0 + bound_tol))
        throw BoundViolated("claimed operator bound fails on '" + id +
                            "' at p = " + std::to_string(p));
    }
  }

  const PsiFunction transferred = transfer_psi(theta, psi);
  TransferReport report;
  report.operator_tag = op.tag;
  report.theta_kind = theta.kind_name();
  report.per_function.resize(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& [id, f] = corpus[i];
    const double denom = gls_norm(f, psi, rel_tol).value;
    const double numer = gls_norm(op.apply(f), transferred, rel_tol).value;
    double ratio = 0.0;
    if (denom > 0.0)
      ratio = numer / denom;
    else if (numer > 0.0)
      ratio = kInf;
    report.per_function[i] = {id, ratio};
  });
  for (const auto& entry : report.per_function)
    report.max_ratio = std::max(report.max_ratio, entry.ratio);
  return report;
}

}  // namespace qgls
