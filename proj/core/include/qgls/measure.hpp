#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qgls/errors.hpp"

namespace qgls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A half-open interval [lo, hi) used for indicator sets and pieces.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x < hi; }
};

/// The measure spaces the toolkit operates on: (0,1) and (0,inf) with
/// Lebesgue measure, and finite atomic spaces with positive weights.
class MeasureSpace {
 public:
  enum class Kind { UnitInterval, HalfLine, FiniteDiscrete };

  static MeasureSpace unit_interval() { return MeasureSpace(Kind::UnitInterval); }
  static MeasureSpace half_line() { return MeasureSpace(Kind::HalfLine); }
  static MeasureSpace finite_discrete(std::vector<double> atoms,
                                      std::vector<double> weights);

  Kind kind() const { return kind_; }
  double total_mass() const { return total_mass_; }

  /// Open-domain membership test for pointwise evaluation.
  bool in_domain(double x) const;

  /// Upper end of the continuous domain (1 for the unit interval,
  /// +inf for the half line). Meaningless for discrete spaces.
  double domain_end() const {
    return kind_ == Kind::UnitInterval ? 1.0 : kInf;
  }

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const MeasureSpace& other) const;

 private:
  explicit MeasureSpace(Kind kind);

  Kind kind_;
  double total_mass_ = 1.0;
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

/// Slowly varying factor L(y), y > 0.  Two closed families are shipped:
/// L == 1 and L(y) = (1 + ln(1 + y))^kappa.
class SlowlyVarying {
 public:
  enum class Kind { One, LogPower };

  static SlowlyVarying one() { return SlowlyVarying(Kind::One, 0.0); }
  static SlowlyVarying log_power(double kappa) {
    return SlowlyVarying(Kind::LogPower, kappa);
  }

  double operator()(double y) const { return std::exp(log_value(y)); }

  /// ln L(y); safe for very large y.
  double log_value(double y) const {
    if (kind_ == Kind::One) return 0.0;
    if (!(y > 0.0)) throw DomainError("slowly varying factor needs y > 0");
    return kappa_ * std::log(1.0 + std::log1p(y));
  }

  Kind kind() const { return kind_; }
  double kappa() const { return kappa_; }

  bool operator==(const SlowlyVarying& o) const {
    return kind_ == o.kind_ && (kind_ == Kind::One || kappa_ == o.kappa_);
  }

 private:
  SlowlyVarying(Kind kind, double kappa) : kind_(kind), kappa_(kappa) {}
  Kind kind_;
  double kappa_;
};

/// Parameters of the singular family f(x) = c * x^(-Delta) |ln x|^delta L(|ln x|)
/// on (0,1), with Delta > 1 and delta >= 0.  `scale` is an internal
/// multiplier (1 in every persisted configuration); it exists so that
/// homogeneity can be exercised on this family too.
struct PowerLogParams {
  double Delta = 2.0;
  double delta = 0.0;
  SlowlyVarying slowly_varying = SlowlyVarying::one();
  double scale = 1.0;

  void validate() const {
    if (!(Delta > 1.0)) throw DomainError("power-log family requires Delta > 1");
    if (!(delta >= 0.0)) throw DomainError("power-log family requires delta >= 0");
    if (!(scale > 0.0) && scale != 0.0)
      throw DomainError("power-log scale must be nonnegative");
  }
};

}  // namespace qgls
