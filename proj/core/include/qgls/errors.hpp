#pragma once

#include <stdexcept>
#include <string>

namespace qgls {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain a routine is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The representation does not support the requested evaluation
/// (e.g. pointwise evaluation of a tail-defined function).
class EvaluationUnsupported : public Error {
 public:
  using Error::Error;
};

/// Panel refinement stalled before reaching the requested tolerance.
class QuadratureNoConvergence : public Error {
 public:
  using Error::Error;
};

/// The integral of |ln f| diverges, so the geometric mean is undefined.
class DivergentLogIntegral : public Error {
 public:
  using Error::Error;
};

/// A norm required to be finite turned out to be infinite.
class NormDivergent : public Error {
 public:
  explicit NormDivergent(double p, const std::string& what)
      : Error(what), p_(p) {}
  double p() const { return p_; }

 private:
  double p_;
};

/// A generator was evaluated outside its open interval.
class PsiDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The tail-moment integral diverges at the requested exponent.
class TailIntegralDivergent : public Error {
 public:
  using Error::Error;
};

/// Dilation-norm regression residual too large to trust the fitted slope.
class InsufficientDecay : public Error {
 public:
  using Error::Error;
};

/// The contraction condition required by the selected mode fails.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

/// The iteration map produced a NaN or infinite point.
class NonFiniteIterate : public Error {
 public:
  using Error::Error;
};

/// All supplied sample pairs coincide; no Lipschitz ratio can be formed.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a parameter interval do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A claimed per-exponent operator bound is violated by a corpus member.
class BoundViolated : public Error {
 public:
  using Error::Error;
};

/// Configuration document failed fail-closed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgls
