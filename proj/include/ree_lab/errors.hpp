#pragma once

#include <stdexcept>
#include <string>

namespace ree_lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix function was asked to evaluate outside its domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double offending_eigenvalue)
      : Error(what), eigenvalue_(offending_eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Bad caller input that is not a shape or normalization problem
// (non-finite entries, duplicate sample points, simplex violations, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A density-matrix invariant (unit trace, positivity) does not hold.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ree_lab
