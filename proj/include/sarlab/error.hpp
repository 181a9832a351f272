#pragma once

#include <stdexcept>
#include <string>

namespace sarlab {

// Root of every exception thrown by the library. The CLI maps each leaf
// type onto a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the range an operation accepts (n = 0, p > 1, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data is malformed: a letter outside the alphabet, a non-digit,
// mismatched lengths, mixed task kinds.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A dense or exhaustive computation was requested beyond its size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A formula is evaluated where it has no meaning (alpha <= 1 for a cliff scale).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Curve fitting could not proceed, e.g. fewer than two usable points.
class FitError : public Error {
 public:
  using Error::Error;
};

// A root finder or iteration failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sarlab
