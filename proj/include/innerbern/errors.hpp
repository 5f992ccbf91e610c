#pragma once

#include <stdexcept>

namespace innerbern {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters violate a documented precondition.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the function (e.g. phi(1.5)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// n too small for the modifier nodes/knots to fit inside (0,1).
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

/// A function was sampled within the singularity guard.
class SingularSample : public Error {
 public:
  using Error::Error;
};

class StencilOutOfRange : public Error {
 public:
  using Error::Error;
};

class StencilHitsSingularity : public Error {
 public:
  using Error::Error;
};

/// Too few usable points for a rate fit.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace innerbern
