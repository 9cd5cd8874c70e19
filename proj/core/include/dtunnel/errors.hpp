#pragma once

#include <stdexcept>
#include <string>

#include "dtunnel/kinematics.hpp"

namespace dtunnel {

/// Thrown when a parameter set lies outside the evanescent particle window
/// (or violates a BarrierSystem invariant). Carries the classification.
class RegimeError : public std::domain_error {
 public:
  RegimeError(Regime regime, const std::string& what)
      : std::domain_error(what), regime_(regime) {}

  Regime regime() const noexcept { return regime_; }

 private:
  Regime regime_;
};

/// Invalid geometry or mass (negative width, non-positive height, ...).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent evaluations of the same quantity disagreed. Always a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The finite-difference stencil would leave the regime or collapse to x.
class DerivativeStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtunnel
