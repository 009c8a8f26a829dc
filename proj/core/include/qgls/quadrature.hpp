#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qgls::quad {

using Fn = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evals = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod 7/15 on a finite interval.  The embedded Gauss rule
/// supplies the per-panel error estimate; the worst panel is bisected until
/// the summed error meets max(abs_tol, rel_tol * |value|) or the segment
/// budget runs out (converged = false).
///
/// Known discontinuity locations should be passed as `split_hints`: a jump
/// inside the node-free sliver at a panel edge is invisible to the rule, so
/// panels are seeded to break exactly there.
Result integrate_finite(const Fn& f, double a, double b, double rel_tol,
                        double abs_tol = 0.0, std::size_t max_segments = 20000,
                        const std::vector<double>& split_hints = {});

struct TailResult {
  Result res;
  bool divergent = false;
};

/// Integral of f over [start, +inf) for integrands that eventually decay.
/// Integrates [start, start + initial_width], then doubles the truncation
/// point.  The integral is declared divergent when three successive
/// extensions each grow the running sum by more than 10%.
TailResult integrate_decaying(const Fn& f, double start, double rel_tol,
                              double initial_width,
                              std::size_t max_doublings = 60,
                              const std::vector<double>& split_hints = {});

}  // namespace qgls::quad
