#include "qgls/function.hpp"

#include <algorithm>
#include <cmath>

namespace qgls {

namespace {

void validate_grid(const std::vector<double>& grid, const MeasureSpace& space) {
  if (grid.size() < 2)
    throw DomainError("sampled representation needs at least 2 grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]))
      throw DomainError("sampled grid points must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw DomainError("sampled grid must be strictly increasing");
  }
  // A leading point at 0 is allowed: it only marks where the first piece
  // starts; pointwise evaluation still works on the open domain.
  if (grid.front() < 0.0)
    throw DomainError("sampled grid must lie in the closed domain");
  if (space.kind() == MeasureSpace::Kind::UnitInterval && grid.back() >= 1.0)
    throw DomainError("sampled grid must lie inside (0,1)");
}

void validate_set(std::vector<Interval>& set, const MeasureSpace& space) {
  std::sort(set.begin(), set.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double prev_hi = -kInf;
  for (const Interval& iv : set) {
    if (!(iv.hi > iv.lo))
      throw DomainError("indicator intervals must have positive length");
    if (iv.lo < prev_hi)
      throw DomainError("indicator intervals must be disjoint");
    if (iv.lo < 0.0)
      throw DomainError("indicator intervals must lie in the domain");
    if (space.kind() == MeasureSpace::Kind::UnitInterval && iv.hi > 1.0)
      throw DomainError("indicator intervals must lie inside [0,1]");
    prev_hi = iv.hi;
  }
}

}  // namespace

FunctionRep FunctionRep::power_log(PowerLogParams params, MeasureSpace space) {
  params.validate();
  if (space.kind() != MeasureSpace::Kind::UnitInterval)
    throw DomainError("power-log functions live on the unit interval");
  return FunctionRep(PowerLog{params}, std::move(space));
}

FunctionRep FunctionRep::sampled(std::vector<double> grid, std::vector<double> values,
                                 MeasureSpace space) {
  if (space.kind() == MeasureSpace::Kind::FiniteDiscrete) {
    if (grid != space.atoms())
      throw DomainError("sampled grid on a discrete space must equal the atoms");
  } else {
    validate_grid(grid, space);
  }
  if (values.size() != grid.size())
    throw DomainError("sampled values must match the grid size");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("sampled values must be finite");
  return FunctionRep(Sampled{std::move(grid), std::move(values)}, std::move(space));
}

FunctionRep FunctionRep::indicator(std::vector<Interval> set, MeasureSpace space) {
  if (space.kind() == MeasureSpace::Kind::FiniteDiscrete) {
    // Atoms are points; intervals select the atoms they contain.
  }
  validate_set(set, space);
  return FunctionRep(Indicator{std::move(set)}, std::move(space));
}

FunctionRep FunctionRep::tail_defined(TailFunction tail, MeasureSpace space) {
  return FunctionRep(TailDefined{std::move(tail)}, std::move(space));
}

FunctionRep FunctionRep::zero(MeasureSpace space) {
  return indicator({}, std::move(space));
}

double FunctionRep::evaluate(double x) const {
  if (is_tail_defined())
    throw EvaluationUnsupported(
        "tail-defined functions have no pointwise values; use the tail calculus");
  if (!space_.in_domain(x)) throw DomainError("evaluation point outside the domain");

  if (is_power_log()) {
    const PowerLogParams& p = power_log_data().params;
    const double t = -std::log(x);  // |ln x| on (0,1)
    return p.scale * std::exp(p.Delta * t + p.delta * std::log(t) +
                              p.slowly_varying.log_value(t));
  }
  if (is_sampled()) {
    const Sampled& s = sampled_data();
    if (x < s.grid.front()) return 0.0;
    auto it = std::upper_bound(s.grid.begin(), s.grid.end(), x);
    return s.values[static_cast<std::size_t>(it - s.grid.begin()) - 1];
  }
  const Indicator& ind = indicator_data();
  for (const Interval& iv : ind.set)
    if (iv.contains(x)) return 1.0;
  return 0.0;
}

bool FunctionRep::is_piecewise_constant() const {
  if (is_tail_defined()) return false;
  if (space_.kind() == MeasureSpace::Kind::FiniteDiscrete) return true;
  return is_sampled() || is_indicator();
}

std::vector<Piece> FunctionRep::pieces() const {
  if (!is_piecewise_constant())
    throw EvaluationUnsupported("piece decomposition needs a piecewise-constant representation");

  std::vector<Piece> out;
  if (space_.kind() == MeasureSpace::Kind::FiniteDiscrete) {
    const auto& atoms = space_.atoms();
    const auto& weights = space_.weights();
    for (std::size_t i = 0; i < atoms.size(); ++i)
      out.push_back({weights[i], evaluate(atoms[i])});
    return out;
  }

  const double end = space_.domain_end();
  if (is_indicator()) {
    for (const Interval& iv : indicator_data().set)
      out.push_back({iv.length(), 1.0});
    return out;
  }
  const Sampled& s = sampled_data();
  for (std::size_t i = 0; i + 1 < s.grid.size(); ++i)
    out.push_back({s.grid[i + 1] - s.grid[i], s.values[i]});
  const double tail_measure = end - s.grid.back();
  if (s.values.back() != 0.0 || std::isfinite(tail_measure))
    out.push_back({tail_measure, s.values.back()});
  return out;
}

std::vector<double> FunctionRep::breakpoints() const {
  std::vector<double> cuts;
  if (is_sampled()) {
    cuts = sampled_data().grid;
  } else if (is_indicator()) {
    for (const Interval& iv : indicator_data().set) {
      cuts.push_back(iv.lo);
      cuts.push_back(iv.hi);
    }
  }
  return cuts;
}

FunctionRep FunctionRep::scaled(double alpha) const {
  if (is_power_log()) {
    PowerLogParams p = power_log_data().params;
    p.scale *= std::abs(alpha);
    return power_log(p, space_);
  }
  if (is_sampled()) {
    Sampled s = sampled_data();
    for (double& v : s.values) v *= alpha;
    return sampled(std::move(s.grid), std::move(s.values), space_);
  }
  if (is_indicator()) {
    const Indicator& ind = indicator_data();
    if (ind.set.empty()) return *this;
    std::vector<double> grid;
    std::vector<double> values;
    for (const Interval& iv : ind.set) {
      grid.push_back(iv.lo);
      values.push_back(alpha);
      grid.push_back(iv.hi);
      values.push_back(0.0);
    }
    if (space_.kind() == MeasureSpace::Kind::UnitInterval && grid.back() >= 1.0) {
      grid.pop_back();
      values.pop_back();
    }
    return sampled(std::move(grid), std::move(values), space_);
  }
  throw EvaluationUnsupported("cannot scale a tail-defined function");
}

FunctionRep FunctionRep::piecewise_sum(const FunctionRep& f, const FunctionRep& g) {
  if (!(f.space() == g.space()))
    throw DomainMismatch("summands must live on the same measure space");
  if (!f.is_piecewise_constant() || !g.is_piecewise_constant())
    throw EvaluationUnsupported("piecewise sum needs piecewise-constant inputs");
  if (f.space().kind() == MeasureSpace::Kind::FiniteDiscrete) {
    const auto& atoms = f.space().atoms();
    std::vector<double> values;
    values.reserve(atoms.size());
    for (double a : atoms) values.push_back(f.evaluate(a) + g.evaluate(a));
    return sampled(atoms, std::move(values), f.space());
  }

  auto collect = [](const FunctionRep& h, std::vector<double>& cuts) {
    if (h.is_sampled()) {
      for (double x : h.sampled_data().grid) cuts.push_back(x);
    } else {
      for (const Interval& iv : h.indicator_data().set) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
      }
    }
  };
  std::vector<double> cuts{0.0};
  collect(f, cuts);
  collect(g, cuts);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double end = f.space().domain_end();
  while (!cuts.empty() && cuts.back() >= end) cuts.pop_back();
  if (cuts.empty()) cuts.push_back(0.0);

  auto value_at = [](const FunctionRep& h, double lo, double hi) {
    const double probe =
        std::isfinite(hi) ? 0.5 * (lo + hi) : (lo > 0.0 ? 2.0 * lo : 1.0);
    return h.evaluate(probe);
  };
  std::vector<double> values;
  values.reserve(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = i + 1 < cuts.size() ? cuts[i + 1] : end;
    values.push_back(value_at(f, lo, hi) + value_at(g, lo, hi));
  }
  return sampled(std::move(cuts), std::move(values), f.space());
}

}  // namespace qgls
