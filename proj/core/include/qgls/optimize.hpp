#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qgls::opt {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  std::size_t evals = 0;
};

/// Golden-section maximization on [lo, hi] (unimodal assumption; on
/// multimodal inputs it returns some local maximum inside the bracket).
GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double x_tol, std::size_t max_iter = 400);

/// Polynomial extrapolation of (xs, ys) to x = 0 (Neville's scheme).
double neville_at_zero(std::vector<double> xs, std::vector<double> ys);

struct SupOptions {
  double eps_rel = 1e-6;   // endpoint offset relative to the interval length
  int coarse_points = 33;
  int extrap_levels = 3;   // epsilon shrinks x10 per level
  double x_tol_rel = 1e-7;
  bool extrapolate_lo = true;  // allow the endpoint-limit estimate at lo
  bool extrapolate_hi = true;
  bool closed_lo = false;  // endpoint itself is evaluable (no offset)
  bool closed_hi = false;
};

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  bool endpoint_limit = false;  // sup attained only in an endpoint limit
  bool divergent = false;       // profile grows without bound at an endpoint
  std::vector<std::pair<double, double>> profile;  // every (x, g(x)) seen
};

/// Supremum of g over the open (or per-side closed) interval (lo, hi):
/// coarse grid, golden-section refinement around the best cell, and a
/// Richardson/Neville endpoint-limit estimate when the maximum sits against
/// an open endpoint.  +inf values or unbounded endpoint growth set
/// `divergent` with value = +inf.
SupResult sup_over_interval(const std::function<double(double)>& g, double lo,
                            double hi, const SupOptions& options = {});

/// Infimum via sup_over_interval on -g.
SupResult inf_over_interval(const std::function<double(double)>& g, double lo,
                            double hi, const SupOptions& options = {});

}  // namespace qgls::opt
