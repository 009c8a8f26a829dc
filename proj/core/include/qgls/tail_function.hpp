#pragma once

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "qgls/measure.hpp"

namespace qgls {

/// Distribution tail T(u) = mu{ |f| >= u }, nonincreasing in u.
///
/// Three storages:
///   * Analytic  — the power-log family T(x) = C x^(-b) (ln x)^gamma L(ln x)
///     for x >= e, flattened to min(mass, T(e)) below e;
///   * Step      — exact nonincreasing step function (from indicator or
///     sampled representations);
///   * Inverted  — tail of a strictly decreasing singular function on (0,1),
///     evaluated on demand by monotone inversion.
class TailFunction {
 public:
  struct Analytic {
    double scale = 1.0;      // C > 0
    double exponent = 0.5;   // b in (0,1)
    double log_exponent = 0.0;  // gamma >= 0
    SlowlyVarying sv = SlowlyVarying::one();
    double mass = 1.0;       // total measure cap

    void validate() const {
      if (!(scale > 0.0)) throw DomainError("analytic tail requires C > 0");
      if (!(exponent > 0.0 && exponent < 1.0))
        throw DomainError("analytic tail requires b in (0,1)");
      if (!(log_exponent >= 0.0))
        throw DomainError("analytic tail requires gamma >= 0");
      if (!(mass > 0.0)) throw DomainError("analytic tail requires mass > 0");
    }

    /// ln T(x) for ln x = lx >= 1, without the flat cap.
    double log_value_from_log(double lx) const {
      return std::log(scale) - exponent * lx +
             log_exponent * std::log(lx) + sv.log_value(lx);
    }
  };

  struct Step {
    // T(u) = measure_above[j] for u in (thresholds[j-1], thresholds[j]],
    // where thresholds are the distinct magnitudes in increasing order and
    // measure_above[j] is the measure where |f| >= thresholds[j].
    std::vector<double> thresholds;
    std::vector<double> measure_above;
    double mass = 1.0;
  };

  struct Inverted {
    PowerLogParams params;  // strictly decreasing on (0,1) for these families
    double mass = 1.0;
  };

  static TailFunction analytic(const Analytic& a) {
    a.validate();
    return TailFunction(a);
  }
  static TailFunction step(Step s);
  static TailFunction inverted(const Inverted& inv) {
    inv.params.validate();
    return TailFunction(inv);
  }

  /// T(u) for u > 0.
  double operator()(double u) const;

  bool is_analytic() const { return std::holds_alternative<Analytic>(repr_); }
  bool is_step() const { return std::holds_alternative<Step>(repr_); }
  const Analytic& analytic_params() const { return std::get<Analytic>(repr_); }
  const Step& step_data() const { return std::get<Step>(repr_); }
  const Inverted& inverted_data() const { return std::get<Inverted>(repr_); }

  double mass() const;

 private:
  template <class R>
  explicit TailFunction(R r) : repr_(std::move(r)) {}

  std::variant<Analytic, Step, Inverted> repr_;
};

}  // namespace qgls
