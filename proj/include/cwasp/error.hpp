#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cwasp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed program, expression, QBF or graph text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A structural invariant of a program, graph or expression does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to work beyond its configured bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a k-expression failed (sign conflict, unsupported sign).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwasp
