#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qgls/function.hpp"
#include "qgls/psi.hpp"
#include "qgls/quasinorm.hpp"

namespace qgls {

/// sup_{p in (a,b)} ||f||_p / psi(p) together with the scanned profile.
struct GlsNormResult {
  double value = 0.0;
  double argmax_p = 0.0;
  bool endpoint_limit = false;  // sup attained only as a limit at a or b
  bool divergent = false;       // profile unbounded (f outside the space)
  std::vector<std::pair<double, double>> profile;  // (p, ratio) evaluations
};

/// Norm of f at exponent p, routed through the tail moment integral for
/// tail-defined representations.  +inf when divergent.
double norm_value_at(const FunctionRep& f, double p, double rel_tol = 1e-9);

GlsNormResult gls_norm(const FunctionRep& f, const PsiFunction& psi,
                       double rel_tol = 1e-9);

/// Tabulated natural generator p -> ||f||_p on (a, b); node layout is
/// uniform in 1/p, where the log-profile is convex, so the interpolant never
/// undershoots and gls_norm(f, natural_function(f)) = 1 holds at the nodes.
PsiFunction natural_function(const FunctionRep& f, double a, double b,
                             std::size_t grid_size = 65, double rel_tol = 1e-9);

/// Fundamental function phi(delta) = sup_p delta^{1/p} / psi(p),
/// delta in [0, 1]; phi(0) = 0 by continuity.  Larger delta is refused.
double fundamental_function(const PsiFunction& psi, double delta);

struct FundamentalBoundsReport {
  struct Row {
    double delta = 0.0;
    double phi = 0.0;
    double left_bound = 0.0;   // delta^{1/a} / sup psi (when finite)
    double right_bound = 0.0;  // delta^{1/b} / inf psi
    bool left_checked = false;
    bool holds = false;
  };
  std::vector<Row> rows;
  bool all_hold = true;
};

/// Verifies the bilateral fundamental-function estimate on a delta grid;
/// the lower bound is skipped when sup psi = +inf.
FundamentalBoundsReport fundamental_bounds_check(const PsiFunction& psi,
                                                 const std::vector<double>& deltas);

/// Dilation-operator growth exponents fitted from single-probe lower bounds
/// ||sigma_s probe|| / ||probe||, using ||sigma_s f||_p = s^{1/p} ||f||_p.
struct BoydEstimate {
  double gamma1 = 0.0;  // slope as s -> 0
  double gamma2 = 0.0;  // slope as s -> infinity
  std::vector<double> s_grid;
  struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rel = 0.0;            // rms residual / data spread
    std::vector<double> log_s, log_ratio;  // the fitted points
  };
  Fit small_s, large_s;
};

/// The probe must be piecewise constant on the half line with finite norm in
/// the space; the regression uses the three smallest and three largest
/// dilation factors.  Throws InsufficientDecay when the residual exceeds
/// residual_tol.
BoydEstimate boyd_indices(const PsiFunction& psi, const FunctionRep& probe,
                          const std::vector<double>& s_grid,
                          double residual_tol = 0.05);

/// Equal-measure partition demonstration: pieces g_{i,n} = n f 1_{A_n(i)},
/// their worst norm against n^{1-1/b} ||f|| / inf psi, and the pointwise
/// reconstruction f = (1/n) sum_i g_{i,n}.
struct CollapseReport {
  std::vector<std::size_t> n_values;
  std::vector<double> max_piece_norms;
  std::vector<double> upper_bounds;
  double f_gls_norm = 0.0;
  double psi_inf = 0.0;
  bool bounds_hold = true;
  double max_reconstruction_error = 0.0;
};

CollapseReport collapse_demo(const FunctionRep& f, const PsiFunction& psi,
                             const std::vector<std::size_t>& n_list,
                             double rel_tol = 1e-9);

}  // namespace qgls
