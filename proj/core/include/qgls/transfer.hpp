#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgls/function.hpp"
#include "qgls/psi.hpp"

namespace qgls {

/// Per-exponent operator bound Theta(p) on (a, b):
///   Constant    Theta(p) = c
///   PowerOfS    Theta(p) = s^{1/p}   (dilation by the factor s)
///   Tabulated   log-linear in 1/p between measured nodes
class OperatorBoundProfile {
 public:
  enum class Kind { Constant, PowerOfS, Tabulated };

  static OperatorBoundProfile constant(double c, double a, double b);
  static OperatorBoundProfile power_of_s(double s, double a, double b);
  static OperatorBoundProfile tabulated(std::vector<double> p_nodes,
                                        std::vector<double> values, double a,
                                        double b);

  double lower() const { return a_; }
  double upper() const { return b_; }
  Kind kind() const { return kind_; }
  std::string kind_name() const;

  double log_value(double p) const;
  double operator()(double p) const { return std::exp(log_value(p)); }

  double constant_value() const { return param_; }
  double dilation_factor() const { return param_; }
  const std::vector<double>& p_nodes() const { return p_nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  OperatorBoundProfile(Kind kind, double a, double b)
      : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_, b_;
  double param_ = 1.0;
  std::vector<double> p_nodes_, values_;
};

/// The transferred generator  Psi[Theta](p) = Theta(p) * psi(p).
/// Exact pass-through for Theta == 1; otherwise a tabulated product whose
/// node interpolation (log-linear in 1/p) reproduces dilation factors
/// exactly.  Throws DomainMismatch when the intervals differ.
PsiFunction transfer_psi(const OperatorBoundProfile& theta,
                         const PsiFunction& psi);

/// A concrete operator acting on function representations.
struct ConcreteOperator {
  std::string tag;
  std::function<FunctionRep(const FunctionRep&)> apply;
};

ConcreteOperator identity_operator();
/// sigma_s f (x) = f(x / s) on the half line (scales piecewise supports).
ConcreteOperator dilation_operator(double s);
/// f -> w * f for a scalar multiplier w.
ConcreteOperator scaling_operator(double w);

struct TransferReport {
  std::string operator_tag;
  std::string theta_kind;
  double max_ratio = 0.0;
  struct Entry {
    std::string id;
    double ratio = 0.0;
  };
  std::vector<Entry> per_function;
};

/// Checks ||U f||_p <= Theta(p) ||f||_p across the corpus (BoundViolated
/// beyond tolerance), then reports per-member ratios
/// gls_norm(U f, Psi[Theta]) / gls_norm(f, psi), whose supremum is 1 when
/// Theta is the exact profile.
TransferReport verify_transfer_norm(
    const ConcreteOperator& op, const OperatorBoundProfile& theta,
    const PsiFunction& psi,
    const std::vector<std::pair<std::string, FunctionRep>>& corpus,
    double rel_tol = 1e-9, double bound_tol = 1e-7);

}  // namespace qgls
