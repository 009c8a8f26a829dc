#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qgls/errors.hpp"

namespace qgls {

using Point = std::vector<double>;

/// A quasi-metric space over real vectors: symmetric d >= 0 with
/// d(x,y) <= K_triangle [d(x,z) + d(z,y)], and optionally the three-hop
/// chain constant d(x,y) <= K_quad [d(x,z) + d(z,v) + d(v,y)].
struct QuasiMetricSpace {
  std::string descriptor;
  std::function<double(const Point&, const Point&)> distance;
  double K_triangle = 1.0;
  std::optional<double> K_quad;

  void validate() const {
    if (!(K_triangle >= 1.0)) throw DomainError("need K_triangle >= 1");
    if (K_quad && !(*K_quad >= 1.0 && *K_quad <= K_triangle * K_triangle))
      throw DomainError("need 1 <= K_quad <= K_triangle^2");
  }
};

struct ContractionProblem {
  QuasiMetricSpace space;
  std::function<Point(const Point&)> map;
  double alpha = 0.5;  // certified Lipschitz constant, in (0,1)
  Point x0;
};

enum class ContractionMode { TriangleSquared, Quadrilateral };

struct StopRule {
  double target_bound = 0.0;        // stop once the a-priori bound is below
  std::size_t max_iterations = 100;
};

/// A-priori error certificate for the orbit x_{n+1} = map(x_n):
///   TriangleSquared:  d(x*, x_n) <= K alpha^n d0 / (1 - alpha K^2),  alpha K^2 < 1
///   Quadrilateral:    d(x*, x_n) <= K alpha^n d0 / (1 - alpha K),    alpha K   < 1
/// with d0 = d(x0, x1) and K the constant of the chosen mode.
struct ContractionCertificate {
  ContractionMode mode = ContractionMode::TriangleSquared;
  double K_used = 1.0;
  double alpha = 0.0;
  double d0 = 0.0;
  struct Iteration {
    std::size_t n = 0;       // index of the iterate the bound applies to
    double step_distance = 0.0;  // d(x_{n-1}, x_n)
    double bound = 0.0;          // B_n
  };
  std::vector<Iteration> iterations;
  Point final_point;
  std::size_t n_iters = 0;

  double bound_at(std::size_t n) const;
};

/// Runs the iteration with the a-priori stopping rule.  Refuses with
/// ConditionViolated when the mode's contraction condition fails.
ContractionCertificate solve(const ContractionProblem& problem,
                             ContractionMode mode, const StopRule& stop);

/// Largest observed ratio d(map x, map y) / d(x, y) over the sample pairs;
/// a lower estimate of the true constant, advisory only.
double estimate_alpha(const QuasiMetricSpace& space,
                      const std::function<Point(const Point&)>& map,
                      const std::vector<std::pair<Point, Point>>& pairs);

struct QuasiConstants {
  double K_triangle;
  double K_quad;
};

/// Default constants 2^{1/p-1} and 3^{1/p-1} for the L_p quasi-distance.
QuasiConstants lp_quasi_constants(double p);
/// Default constants 2^{1/a-1} and 3^{1/a-1} for a Grand-Lebesgue space
/// over the exponent window (a, b).
QuasiConstants gls_quasi_constants(double a);

/// d(x, y) = sum_i (x_i - y_i)^2 with K_triangle = 2; K_quad as supplied.
QuasiMetricSpace squared_euclidean_space(std::optional<double> K_quad = {});

/// Exact sampled L_p quasi-distance d(x,y) = (sum_i m_i |x_i - y_i|^p)^{1/p}
/// over fixed piece measures, with the default constants for that p.
QuasiMetricSpace lp_sampled_space(double p, std::vector<double> piece_measures);

struct SpotCheckReport {
  bool triangle_ok = true;
  bool quad_ok = true;
  bool contraction_ok = true;
  double worst_triangle = 0.0;     // max d(x,y) / (d(x,z)+d(z,y))
  double worst_quad = 0.0;         // max d(x,y) / (d(x,z)+d(z,v)+d(v,y))
  double worst_contraction = 0.0;  // max d(Tx,Ty) / d(x,y)
};

/// Randomized verification of the declared inequalities on sampled tuples.
SpotCheckReport spot_check(const QuasiMetricSpace& space,
                           const std::function<Point(std::mt19937_64&)>& sampler,
                           std::size_t samples, std::uint64_t seed,
                           const std::function<Point(const Point&)>* map = nullptr,
                           double alpha = 0.0);

}  // namespace qgls
