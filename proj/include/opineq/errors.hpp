#pragma once

#include <stdexcept>
#include <string>

namespace opineq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Malformed input that is not a dimension or definiteness problem
/// (non-unit vector, non-orthonormal compression, bad partition, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Parameters for which a hypothesis regime admits no instance.
class InfeasibleRegime : public Error {
 public:
  using Error::Error;
};

/// A concrete instance that does not satisfy the regime it was checked under.
/// Catchable as InfeasibleRegime: the instance admits no valid reading.
class RegimeViolation : public InfeasibleRegime {
 public:
  using InfeasibleRegime::InfeasibleRegime;
};

}  // namespace opineq
