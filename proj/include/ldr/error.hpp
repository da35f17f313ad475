#pragma once

#include <stdexcept>
#include <string>

namespace ldr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions disagree, or a size precondition (power of two, squareness) fails.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Operator spectra overlap or a Sylvester system is (numerically) singular.
class SpectralError : public Error {
 public:
  SpectralError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  explicit SpectralError(const std::string& what) : SpectralError(what, 0.0) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Floating-point failure: singular matrix, failed residual verification, divergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An operation was given an operator of the wrong variant.
class ClassError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Corrupt binary file. Carries the byte offset where decoding failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Invalid run configuration. Names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ldr
