#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwinterp {

using Complex = std::complex<double>;

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied object violates a structural precondition
// (duplicate nodes, size mismatch, node on the reference line, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A scalar parameter lies outside its supported range.
class ParameterRange : public Error {
 public:
  using Error::Error;
};

// Input file missing, unreadable, or malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Failure while writing an artifact.
class OutputError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Base for numerical failures that carry diagnostic state.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature hit its panel cap before the requested tolerance.
// Carries the last two refinement values so callers can judge how close it got.
class QuadratureNotConverged : public NumericError {
 public:
  QuadratureNotConverged(const std::string& what, Complex last, Complex previous, int panels)
      : NumericError(what), last_value(last), previous_value(previous), panel_count(panels) {}
  Complex last_value;
  Complex previous_value;
  int panel_count;
};

// A log-space product fell below the representable floor.
class ProductUnderflow : public NumericError {
 public:
  ProductUnderflow(const std::string& what, std::size_t index, double log_value)
      : NumericError(what), index(index), log_value(log_value) {}
  std::size_t index;
  double log_value;
};

// A zero of the generating function is numerically multiple: the derivative
// magnitude at the node fell below the usable floor.
class MultipleZero : public NumericError {
 public:
  MultipleZero(const std::string& what, std::size_t index, double derivative_magnitude)
      : NumericError(what), index(index), derivative_magnitude(derivative_magnitude) {}
  std::size_t index;
  double derivative_magnitude;
};

// A truncated line integral could not push its tail estimate below tolerance.
class TruncationInsufficient : public NumericError {
 public:
  TruncationInsufficient(const std::string& what, double value, double tail_estimate)
      : NumericError(what), value(value), tail_estimate(tail_estimate) {}
  double value;
  double tail_estimate;
};

// A mode with zero input coupling was asked to move.
class UncontrollableMode : public InvalidArgument {
 public:
  UncontrollableMode(const std::string& what, std::size_t index)
      : InvalidArgument(what), index(index) {}
  std::size_t index;
};

}  // namespace pwinterp
