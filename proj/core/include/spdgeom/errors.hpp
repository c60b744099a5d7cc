#pragma once

#include <stdexcept>
#include <string>

namespace spdgeom {

/// Base class for all spdgeom errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input matrix is not symmetric within tolerance.
class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

/// Matrix requested as SPD has an eigenvalue at or below the floor.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Scalar function is undefined (non-finite) at a required point.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a diffeomorphism but the function is not flagged as one.
class NotDiffeomorphismError : public Error {
 public:
  using Error::Error;
};

/// Geodesic evaluated outside its validity interval.
class DomainExitError : public Error {
 public:
  using Error::Error;
};

/// Closed-form operation requested for a base metric that has none.
class UnsupportedBaseError : public Error {
 public:
  using Error::Error;
};

/// Commuting-case formula invoked on non-commuting matrices.
class NotCommutingError : public Error {
 public:
  using Error::Error;
};

/// Parameter pair outside the operation's case dispatch.
class InvalidPairError : public Error {
 public:
  using Error::Error;
};

/// Power parameter at an excluded value.
class InvalidPowerError : public Error {
 public:
  using Error::Error;
};

/// Sectional curvature requested on a (numerically) degenerate plane.
class DegeneratePlaneError : public Error {
 public:
  using Error::Error;
};

/// A sampled function returned non-finite values on the check grid.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailureError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference step could not be made small enough to stay in the cone.
class StepUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed CLI or file input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdgeom
