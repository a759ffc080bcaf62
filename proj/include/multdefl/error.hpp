#pragma once

#include <stdexcept>
#include <string>

namespace multdefl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: shapes, variable counts, indices, bad exponent sets.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text or JSON input that cannot be parsed. Carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A numerical decision failed: rank drift, non-stabilizing dual space,
/// inconsistent primal basis, iteration bound exceeded.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace multdefl
