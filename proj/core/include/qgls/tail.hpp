#pragma once

#include <optional>
#include <vector>

#include "qgls/function.hpp"
#include "qgls/psi.hpp"
#include "qgls/quasinorm.hpp"
#include "qgls/tail_function.hpp"

namespace qgls {

/// Distribution tail of an evaluable function: exact step data for
/// piecewise-constant representations, monotone inversion for the singular
/// power-log family.  `u_grid` is only used to sanity-probe the evaluator;
/// the returned object evaluates at any u > 0.
TailFunction tail_of(const FunctionRep& f, const std::vector<double>& u_grid = {});

/// ||f||_p from the tail alone:  [ p * integral_0^inf u^{p-1} T(u) du ]^{1/p}
/// (the layer-cake moment).  Exact step arithmetic for step tails; the
/// u-integral splits at the flat/decaying boundary with a log substitution
/// on the upper part otherwise.  Throws TailIntegralDivergent when the upper
/// integral diverges (p >= b for the analytic family).
NormResult norm_from_tail(const TailFunction& tail, double p, double rel_tol = 1e-9);

/// Like norm_from_tail but returning ln of the norm (stable when the moment
/// integral under- or overflows at exponents very close to the divergence
/// edge).
double log_norm_from_tail(const TailFunction& tail, double p, double rel_tol = 1e-9);

/// Report shared by the tail-bound operations.  Linear columns may underflow
/// to 0 at extreme abscissae; the log columns are always meaningful.
struct TailBoundReport {
  std::vector<double> u_grid;                // evaluation points (or exp of log_x)
  std::vector<double> exact_or_empirical_tail;
  std::vector<double> tcheby_bound;          // inf_p of the norm bound
  std::vector<double> optimal_p_bound;       // bound at p = b - c/ln x
  std::vector<double> gap_ratio;             // bound / exact tail
  std::vector<double> inner_bound;           // inf_p ||f||_p^p / u^p, when known
  std::vector<double> log_u, log_tail, log_bound;  // log-space versions
};

/// Tchebychev tail bound  inf_p [ G^p psi(p)^p / u^p ]  for a function with
/// Grand-Lebesgue norm G against the generator psi.  When the natural
/// function is supplied, the tighter inner infimum inf_p ||f||_p^p / u^p is
/// reported alongside; when the true tail is supplied the gap column is
/// filled.
TailBoundReport tcheby_tail_bound(double gls_norm_value, const PsiFunction& psi,
                                  const std::vector<double>& u_grid,
                                  const std::optional<PsiFunction>& natural_fn = {},
                                  const std::optional<TailFunction>& exact_tail = {});

/// Generator matched to the analytic tail family:
/// psi(p) = (b - p)^{-(gamma+1)/b} L(1/(b-p))^{1/b} on (0, b).
PsiFunction tail_model_psi(double b, double gamma,
                           SlowlyVarying sv = SlowlyVarying::one());

/// Tail estimate with the exponent choice p = b - c / ln x, reported on a
/// log-x grid (x >= e).  The gap column bound/T(x) grows like (ln x)^1.
TailBoundReport optimal_p_tail_estimate(const TailFunction::Analytic& params,
                                        double c,
                                        const std::vector<double>& log_x_grid,
                                        double rel_tol = 1e-9);

/// Convenience overload taking direct abscissae.
TailBoundReport optimal_p_tail_estimate_x(const TailFunction::Analytic& params,
                                          double c,
                                          const std::vector<double>& x_grid,
                                          double rel_tol = 1e-9);

/// Least-squares slope of ln(gap) against ln(ln x); the gap law asserts a
/// slope of 1.
double gap_law_slope(const TailBoundReport& report);

}  // namespace qgls
