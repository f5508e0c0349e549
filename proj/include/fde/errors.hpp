#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fde {

/// Input rejected before any computation (bad parameter, bad file, bad argument).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was attempted and could not produce a finite answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at (or numerically at) a pole of the gamma function.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// |A'| too small to divide by when forming the augmented system.
class DegenerateCoefficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A trajectory produced a non-finite state. Carries where it happened.
class BlowUpError : public NumericalError {
 public:
  BlowUpError(std::size_t index, double time, const std::string& what)
      : NumericalError(what), index_(index), time_(time) {}

  /// First grid node whose state is non-finite.
  std::size_t index() const noexcept { return index_; }
  /// Time at which the non-finite value appeared (may lie between grid nodes).
  double time() const noexcept { return time_; }

 private:
  std::size_t index_;
  double time_;
};

}  // namespace fde
