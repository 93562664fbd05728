#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar or configuration parameter is outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input data are malformed (empty, mismatched shapes, non-binary bits, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The requested problem size cannot satisfy a parameter-selection rule,
/// e.g. a logarithm that would be non-positive.
class InfeasibleConfiguration : public Error {
 public:
  using Error::Error;
};

/// A dense factorization failed or produced non-finite output.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace onebit
