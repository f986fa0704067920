#pragma once

#include <stdexcept>
#include <string>

namespace dias {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or malformed input (including unparsable field files).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DegenerateLattice : public Error {
 public:
  using Error::Error;
};

// Grid or quadrature resolution below the documented minimum.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a cone point of the conformal density.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class InvalidRadius : public Error {
 public:
  using Error::Error;
};

// Parameters outside their domain, e.g. s outside [0, sqrt3/2].
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// split_lengths was asked for a height where the geodesic loop meets a cone point.
class SpecialHeight : public Error {
 public:
  using Error::Error;
};

}  // namespace dias
