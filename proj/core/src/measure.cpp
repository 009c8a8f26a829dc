#include "qgls/measure.hpp"

#include <algorithm>
#include <cmath>

namespace qgls {

MeasureSpace::MeasureSpace(Kind kind) : kind_(kind) {
  switch (kind_) {
    case Kind::UnitInterval:
      total_mass_ = 1.0;
      break;
    case Kind::HalfLine:
      total_mass_ = kInf;
      break;
    case Kind::FiniteDiscrete:
      total_mass_ = 0.0;
      break;
  }
}

MeasureSpace MeasureSpace::finite_discrete(std::vector<double> atoms,
                                           std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size())
    throw DomainError("finite discrete space needs matching nonempty atoms/weights");
  MeasureSpace s(Kind::FiniteDiscrete);
  double mass = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw DomainError("finite discrete weights must be strictly positive");
    mass += w;
  }
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (!(atoms[i] > atoms[i - 1]))
      throw DomainError("finite discrete atoms must be strictly increasing");
  }
  s.atoms_ = std::move(atoms);
  s.weights_ = std::move(weights);
  s.total_mass_ = mass;
  return s;
}

bool MeasureSpace::in_domain(double x) const {
  switch (kind_) {
    case Kind::UnitInterval:
      return x > 0.0 && x < 1.0;
    case Kind::HalfLine:
      return x > 0.0;
    case Kind::FiniteDiscrete:
      return std::find(atoms_.begin(), atoms_.end(), x) != atoms_.end();
  }
  return false;
}

bool MeasureSpace::operator==(const MeasureSpace& other) const {
  return kind_ == other.kind_ && atoms_ == other.atoms_ &&
         weights_ == other.weights_;
}

}  // namespace qgls
