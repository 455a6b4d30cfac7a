#pragma once

#include <stdexcept>
#include <string>

namespace croft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A q-spec (step function) failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the domain of an operation (negative radius, cap deeper
/// than the disc, perturbation outside the small-parameter regime).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace croft
