#pragma once

#include <stdexcept>
#include <string>

namespace qmw {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable size cap (group order, quandle size, ...) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text.  Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qmw
