#pragma once

#include <stdexcept>
#include <string>

namespace tclab {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed PGM magic or header.
class FormatError : public Error {
 public:
  using Error::Error;
};

// PGM maxval other than 255.
class UnsupportedDepthError : public Error {
 public:
  using Error::Error;
};

// Pixel payload shorter than the header promises.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Dimension or metadata mismatch between arguments.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Block size not supported by the requested transform.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

// Scalar argument outside its legal range.
class RangeError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Jacobi sweep cap reached; carries the off-diagonal norm at exit.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class EmptyTrainingSetError : public Error {
 public:
  using Error::Error;
};

// Unparseable or invalid sweep configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tclab
