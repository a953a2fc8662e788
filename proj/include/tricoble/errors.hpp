#pragma once

#include <stdexcept>
#include <string>

namespace tricoble {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (wrong dimensions, zero divisor...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A geometric input is degenerate for the requested construction
/// (collinear frame, singular base point, degenerate conic, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A mathematical validation or certification step failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The Groebner engine ran out of its S-pair reduction budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tricoble
