#pragma once

#include <stdexcept>
#include <string>

namespace deepwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range.
class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// An inverse transform produced an imaginary residue above tolerance.
class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

/// A transport step was requested with a Courant number >= 1.
class CflViolation : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A bathymetry or initial-condition name is not in the catalog.
class UnknownKind : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. Carries the 1-based line/column of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed configuration that fails validation; `field()` is the dotted path.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& reason)
      : Error(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace deepwave
