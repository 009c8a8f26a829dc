#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qgls/measure.hpp"

namespace qgls {

/// Generator psi on an open exponent interval (a, b), 0 <= a < b <= 1,
/// continuous and strictly positive with inf psi > 0.
///
/// Closed set of kinds so that inf/sup over (a,b) can be derived per kind
/// (stationarity analysis for the singular families, node extrema for
/// tabulated generators) instead of by blind sampling:
///   Constant          psi(p) = c
///   IwaniecSbordone   psi(p) = (b - p)^(-theta/p)
///   Bandaliyev        psi(p) = (b - p)^(-1/p) on (b/2, b)
///   TailModel         psi(p) = (b - p)^(-(gamma+1)/b) L(1/(b-p))^(1/b) on (0, b)
///   Tabulated         log-linear in 1/p between nodes
class PsiFunction {
 public:
  enum class Kind { Constant, IwaniecSbordone, Bandaliyev, TailModel, Tabulated };

  /// How a tabulated generator behaves between its node range and (a, b):
  /// natural functions clamp (their values are unknown beyond the nodes);
  /// transferred bound profiles extend log-linearly in 1/p, which is exact
  /// for dilation-type factors s^(1/p).
  enum class TabulatedEnds { Clamp, Extend };

  static PsiFunction constant(double c, double a, double b);
  static PsiFunction iwaniec_sbordone(double theta, double a, double b);
  static PsiFunction bandaliyev(double b);
  static PsiFunction tail_model(double b, double gamma,
                                SlowlyVarying sv = SlowlyVarying::one());
  static PsiFunction tabulated(std::vector<double> p_nodes,
                               std::vector<double> values, double a, double b,
                               TabulatedEnds ends = TabulatedEnds::Clamp);

  double lower() const { return a_; }
  double upper() const { return b_; }
  Kind kind() const { return kind_; }

  /// psi(p); DomainError outside the open interval (a, b).
  double operator()(double p) const { return std::exp(log_value(p)); }
  double log_value(double p) const;

  double inf_psi() const { return inf_; }
  double sup_psi() const { return sup_; }  // may be +inf

  /// Interval that sup-over-p searches should scan, and whether its ends are
  /// evaluable points (tabulated node range) or open limits.
  struct SearchRange {
    double lo, hi;
    bool closed_lo, closed_hi;
  };
  SearchRange search_range() const;

  /// Pointwise product with a positive factor given by its log; result is
  /// tabulated on `p_nodes` (log-linear in 1/p) with extending ends.
  PsiFunction scaled_by(const std::function<double(double)>& log_factor,
                        const std::vector<double>& p_nodes) const;

  // Kind-specific accessors used by serialization.
  double constant_value() const { return param1_; }
  double theta() const { return param1_; }
  double gamma() const { return param1_; }
  const SlowlyVarying& slowly_varying() const { return sv_; }
  const std::vector<double>& p_nodes() const { return p_nodes_; }
  const std::vector<double>& log_values() const { return log_values_; }
  TabulatedEnds tabulated_ends() const { return ends_; }

 private:
  PsiFunction(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  void finalize_extrema();

  Kind kind_;
  double a_ = 0.0, b_ = 1.0;
  double param1_ = 1.0;  // c / theta / gamma
  SlowlyVarying sv_ = SlowlyVarying::one();
  std::vector<double> p_nodes_;      // Tabulated: ascending in p
  std::vector<double> log_values_;   // Tabulated: ln psi at the nodes
  TabulatedEnds ends_ = TabulatedEnds::Clamp;
  double inf_ = 1.0;
  double sup_ = 1.0;
};

}  // namespace qgls
