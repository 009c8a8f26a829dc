#pragma once

#include <optional>
#include <utility>

#include "qgls/function.hpp"

namespace qgls {

/// Result of a single L_p quasi-norm computation, 0 < p <= 1.
/// value == +inf means divergence was positively established (converged
/// stays true); a stalled computation throws QuadratureNoConvergence instead.
struct NormResult {
  double value = 0.0;
  double p = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = true;

  bool is_finite() const { return std::isfinite(value); }
};

/// ||f||_p = (integral of |f|^p)^{1/p}.  Piecewise-constant representations
/// are summed exactly; the power-log family is integrated after the
/// substitution x = e^{-t}, which turns the endpoint singularity into a
/// decaying exponential.  Tail-defined inputs are rejected (use the tail
/// calculus).
NormResult lp_quasinorm(const FunctionRep& f, double p, double rel_tol = 1e-9);

/// ln ||f||_p for a piecewise-constant f (exact piece arithmetic, stable for
/// very small norms).  -inf for the zero function, +inf when divergent.
double log_lp_quasinorm_pieces(const FunctionRep& f, double p);

/// Same norm, but forcing the generic quadrature path even for
/// piecewise-constant inputs.  Exists so the exact piece arithmetic can act
/// as an independent oracle for the quadrature.
NormResult lp_quasinorm_force_quadrature(const FunctionRep& f, double p,
                                         double rel_tol = 1e-9);

/// ||f + g||_p, exact for piecewise pairs, quadrature otherwise.
NormResult lp_norm_of_sum(const FunctionRep& f, const FunctionRep& g, double p,
                          double rel_tol = 1e-9);

/// exp(integral of ln |f| over (0,1)): the limit of ||f||_p as p -> 0+.
double geometric_mean_limit(const FunctionRep& f, double rel_tol = 1e-9);

/// Certificate that ||f+g||_p <= 2^{1/p-1} (||f||_p + ||g||_p) held on a
/// concrete pair, with the observed ratio and the claimed constant.
struct QuasiTriangleCertificate {
  double p_or_a = 0.0;
  double constant_claimed = 0.0;
  double worst_ratio_observed = 0.0;
  std::pair<FunctionRep, FunctionRep> witness;
  double norm_sum = 0.0;       // ||f||_p + ||g||_p
  double norm_of_sum = 0.0;    // ||f+g||_p
  double p_norm_slack = 0.0;   // ||f||^p + ||g||^p - ||f+g||^p  (>= 0)
  bool p_norm_holds = false;
};

QuasiTriangleCertificate quasi_triangle_check(const FunctionRep& f,
                                              const FunctionRep& g, double p,
                                              double rel_tol = 1e-9);

/// Aoki-Rolewicz power parameter: inverts C = 2^{1/p - 1}.
double aoki_rolewicz_power(double C);

}  // namespace qgls
