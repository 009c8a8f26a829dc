#pragma once

#include <variant>
#include <vector>

#include "qgls/measure.hpp"
#include "qgls/tail_function.hpp"

namespace qgls {

/// One constant piece of a piecewise-constant function: `value` on a set of
/// the given measure.
struct Piece {
  double measure = 0.0;
  double value = 0.0;
};

/// A measurable function on a measure space.
///
/// Variants:
///   * PowerLog  — c * x^(-Delta) |ln x|^delta L(|ln x|) on the unit interval;
///   * Sampled   — piecewise constant, left-closed: values[i] holds on
///     [grid[i], grid[i+1]), the last value extends to the domain end, and the
///     function is 0 on (0, grid[0]);
///   * Indicator — indicator of a finite union of disjoint intervals;
///   * TailDefined — known only through its distribution tail (no pointwise
///     evaluation; norms go through the tail calculus).
class FunctionRep {
 public:
  struct PowerLog {
    PowerLogParams params;
  };
  struct Sampled {
    std::vector<double> grid;
    std::vector<double> values;
  };
  struct Indicator {
    std::vector<Interval> set;  // sorted, disjoint
  };
  struct TailDefined {
    TailFunction tail;
  };

  static FunctionRep power_log(PowerLogParams params,
                               MeasureSpace space = MeasureSpace::unit_interval());
  static FunctionRep sampled(std::vector<double> grid, std::vector<double> values,
                             MeasureSpace space = MeasureSpace::unit_interval());
  static FunctionRep indicator(std::vector<Interval> set,
                               MeasureSpace space = MeasureSpace::unit_interval());
  static FunctionRep tail_defined(TailFunction tail,
                                  MeasureSpace space = MeasureSpace::unit_interval());
  static FunctionRep zero(MeasureSpace space = MeasureSpace::unit_interval());

  const MeasureSpace& space() const { return space_; }

  /// Pointwise value at x in the open domain.  PowerLog values are positive
  /// by construction; Sampled returns the signed stored value; Indicator
  /// returns 0 or 1.  Throws EvaluationUnsupported for TailDefined.
  double evaluate(double x) const;

  bool is_power_log() const { return std::holds_alternative<PowerLog>(repr_); }
  bool is_sampled() const { return std::holds_alternative<Sampled>(repr_); }
  bool is_indicator() const { return std::holds_alternative<Indicator>(repr_); }
  bool is_tail_defined() const { return std::holds_alternative<TailDefined>(repr_); }

  /// True when the representation is an exact finite list of constant pieces
  /// (Sampled / Indicator on any space, anything on a discrete space).
  bool is_piecewise_constant() const;

  /// Exhaustive constant-piece decomposition for piecewise representations.
  /// On the half line a trailing piece of infinite measure is included when
  /// the last value is nonzero.
  std::vector<Piece> pieces() const;

  /// Interior discontinuity locations (grid points, interval bounds); empty
  /// for the analytic variants.  Used to seed quadrature panel boundaries.
  std::vector<double> breakpoints() const;

  /// alpha * f.  Supported for PowerLog (scale), Sampled and Indicator.
  FunctionRep scaled(double alpha) const;

  /// Exact pointwise sum of two piecewise-constant functions on the same
  /// continuous space, as a Sampled representation.
  static FunctionRep piecewise_sum(const FunctionRep& f, const FunctionRep& g);

  const PowerLog& power_log_data() const { return std::get<PowerLog>(repr_); }
  const Sampled& sampled_data() const { return std::get<Sampled>(repr_); }
  const Indicator& indicator_data() const { return std::get<Indicator>(repr_); }
  const TailDefined& tail_data() const { return std::get<TailDefined>(repr_); }

 private:
  template <class R>
  FunctionRep(R r, MeasureSpace space) : repr_(std::move(r)), space_(std::move(space)) {}

  std::variant<PowerLog, Sampled, Indicator, TailDefined> repr_;
  MeasureSpace space_;
};

}  // namespace qgls
