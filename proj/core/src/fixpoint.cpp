#include "qgls/fixpoint.hpp"

#include <algorithm>
#include <cmath>

namespace qgls {

namespace {

bool finite_point(const Point& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

double ContractionCertificate::bound_at(std::size_t n) const {
  const double denom_factor = mode == ContractionMode::TriangleSquared
                                  ? K_used * K_used
                                  : K_used;
  return K_used * std::pow(alpha, static_cast<double>(n)) * d0 /
         (1.0 - alpha * denom_factor);
}

ContractionCertificate solve(const ContractionProblem& problem,
                             ContractionMode mode, const StopRule& stop) {
  problem.space.validate();
  if (!(problem.alpha > 0.0 && problem.alpha < 1.0))
    throw DomainError("contraction constant must lie in (0,1)");

  ContractionCertificate cert;
  cert.mode = mode;
  cert.alpha = problem.alpha;
  if (mode == ContractionMode::TriangleSquared) {
    cert.K_used = problem.space.K_triangle;
    if (!(problem.alpha * cert.K_used * cert.K_used < 1.0))
      throw ConditionViolated("need alpha * K^2 < 1 in triangle-squared mode");
  } else {
    if (!problem.space.K_quad)
      throw ConditionViolated("quadrilateral mode needs the chain constant");
    cert.K_used = *problem.space.K_quad;
    if (!(problem.alpha * cert.K_used < 1.0))
      throw ConditionViolated("need alpha * K < 1 in quadrilateral mode");
  }

  Point x = problem.x0;
  Point next = problem.map(x);
  if (!finite_point(next)) throw NonFiniteIterate("map produced a non-finite point");
  cert.d0 = problem.space.distance(x, next);

  if (cert.d0 == 0.0) {
    cert.final_point = x;
    cert.n_iters = 0;
    return cert;
  }

  std::size_t n = 0;
  double step = cert.d0;
  while (true) {
    ++n;  // `next` is x_n
    cert.iterations.push_back({n, step, cert.bound_at(n)});
    x = std::move(next);
    if (cert.iterations.back().bound <= stop.target_bound ||
        n >= stop.max_iterations || step == 0.0)
      break;
    next = problem.map(x);
    if (!finite_point(next)) throw NonFiniteIterate("map produced a non-finite point");
    step = problem.space.distance(x, next);
  }
  cert.final_point = std::move(x);
  cert.n_iters = n;
  return cert;
}

double estimate_alpha(const QuasiMetricSpace& space,
                      const std::function<Point(const Point&)>& map,
                      const std::vector<std::pair<Point, Point>>& pairs) {
  if (pairs.size() < 10)
    throw DomainError("Lipschitz estimation needs at least 10 sample pairs");
  double worst = -1.0;
  for (const auto& [x, y] : pairs) {
    const double d = space.distance(x, y);
    if (d == 0.0) continue;
    worst = std::max(worst, space.distance(map(x), map(y)) / d);
  }
  if (worst < 0.0)
    throw DegenerateSample("all sample pairs coincide");
  return worst;
}

QuasiConstants lp_quasi_constants(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("exponent must lie in (0,1]");
  return {std::pow(2.0, 1.0 / p - 1.0), std::pow(3.0, 1.0 / p - 1.0)};
}

QuasiConstants gls_quasi_constants(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("lower exponent must lie in (0,1)");
  return {std::pow(2.0, 1.0 / a - 1.0), std::pow(3.0, 1.0 / a - 1.0)};
}

QuasiMetricSpace squared_euclidean_space(std::optional<double> K_quad) {
  QuasiMetricSpace space;
  space.descriptor = "squared_euclidean";
  space.distance = [](const Point& x, const Point& y) {
    if (x.size() != y.size()) throw DomainError("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      s += d * d;
    }
    return s;
  };
  space.K_triangle = 2.0;
  space.K_quad = K_quad;
  space.validate();
  return space;
}

QuasiMetricSpace lp_sampled_space(double p, std::vector<double> piece_measures) {
  const QuasiConstants constants = lp_quasi_constants(p);
  for (double m : piece_measures)
    if (!(m > 0.0)) throw DomainError("piece measures must be positive");
  QuasiMetricSpace space;
  space.descriptor = "lp_sampled";
  space.distance = [p, measures = std::move(piece_measures)](const Point& x,
                                                             const Point& y) {
    if (x.size() != y.size() || x.size() != measures.size())
      throw DomainError("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += measures[i] * std::pow(std::abs(x[i] - y[i]), p);
    return s > 0.0 ? std::pow(s, 1.0 / p) : 0.0;
  };
  space.K_triangle = constants.K_triangle;
  space.K_quad = constants.K_quad;
  space.validate();
  return space;
}

SpotCheckReport spot_check(const QuasiMetricSpace& space,
                           const std::function<Point(std::mt19937_64&)>& sampler,
                           std::size_t samples, std::uint64_t seed,
                           const std::function<Point(const Point&)>* map,
                           double alpha) {
  std::mt19937_64 rng(seed);
  SpotCheckReport report;
  for (std::size_t k = 0; k < samples; ++k) {
    const Point x = sampler(rng), y = sampler(rng), z = sampler(rng),
                v = sampler(rng);
    const double dxy = space.distance(x, y);
    const double tri_rhs = space.distance(x, z) + space.distance(z, y);
    if (tri_rhs > 0.0)
      report.worst_triangle = std::max(report.worst_triangle, dxy / tri_rhs);
    if (space.K_quad) {
      const double quad_rhs = space.distance(x, z) + space.distance(z, v) +
                              space.distance(v, y);
      if (quad_rhs > 0.0)
        report.worst_quad = std::max(report.worst_quad, dxy / quad_rhs);
    }
    if (map && dxy > 0.0) {
      const double ratio = space.distance((*map)(x), (*map)(y)) / dxy;
      report.worst_contraction = std::max(report.worst_contraction, ratio);
    }
  }
  report.triangle_ok = report.worst_triangle <= space.K_triangle * (1.0 + 1e-12);
  report.quad_ok = !space.K_quad ||
                   report.worst_quad <= *space.K_quad * (1.0 + 1e-12);
  report.contraction_ok =
      !map || report.worst_contraction <= alpha * (1.0 + 1e-9);
  return report;
}

}  // namespace qgls
