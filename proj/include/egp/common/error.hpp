#pragma once

#include <stdexcept>
#include <string>

namespace egp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested prime is not of the form required by the fundamental matrix.
class IneligiblePrime : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A configured work or memory cap would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace egp
