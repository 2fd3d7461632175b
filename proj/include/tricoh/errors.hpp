#pragma once

#include <stdexcept>
#include <string>

namespace tricoh {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All amplitudes of a field are zero, so it cannot be normalized.
class ZeroField : public Error {
 public:
  ZeroField() : Error("field has zero norm") {}
};

/// A projection selected a slice or direction carrying no amplitude.
class NullProjection : public Error {
 public:
  explicit NullProjection(const std::string& what) : Error("null projection: " + what) {}
};

/// Shape mismatch, e.g. no two-dimensional side where one is required.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Floating point drift beyond the documented tolerances.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A result file could not be written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tricoh
