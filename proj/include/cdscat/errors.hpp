#pragma once

#include <stdexcept>
#include <string>

namespace cdscat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two points that must be distinct coincide (Green tensor, mode singularity).
class CoincidenceError : public Error {
 public:
  using Error::Error;
};

/// Division by a (near) zero quantity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// I - X is numerically singular: the ensemble sits on a collective resonance.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Spheres in a constructed geometry overlap.
class OverlapError : public Error {
 public:
  using Error::Error;
};

/// det(I - X(i xi)) is not positive, so its logarithm is not real.
class SignError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdscat
