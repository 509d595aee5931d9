#pragma once

#include <stdexcept>
#include <string>

namespace scp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-finite input, bad level, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix could not be factorized as symmetric positive definite.
class DegenerateCovariance : public Error {
 public:
  using Error::Error;
};

/// Not enough data to carry out the request (no variogram pairs, empty file, ...).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A quantity that is impossible in exact arithmetic showed up; signals a bug or
/// catastrophic round-off rather than bad input.
class NumericalFault : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scp
