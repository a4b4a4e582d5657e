#pragma once

#include <stdexcept>
#include <string>

namespace symreach {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix passed where an sp(2,R) element was expected has non-zero trace.
class NonTraceless : public Error {
 public:
  using Error::Error;
};

/// Matrix passed where an Sp(2,R) element was expected has det != 1.
class NotSymplectic : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotHyperbolic : public Error {
 public:
  using Error::Error;
};

/// Some accessible generator A + vB is not hyperbolic.
class NotUnstable : public Error {
 public:
  using Error::Error;
};

/// {A, B, [A,B]} do not span the algebra.
class RankCriterionViolation : public Error {
 public:
  using Error::Error;
};

/// Bisection bracket endpoints have the same reach status.
class NoBracket : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// File-system failure; the message always carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace symreach
