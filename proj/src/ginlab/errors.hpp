#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ginlab {

// Bad input values: mismatched rings, out-of-range parameters, violated
// preconditions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Syntax errors in polynomial text or ideal files. `line`/`column` are
// 1-based; `position` is the byte offset into the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position, std::size_t line = 0,
             std::size_t column = 0)
      : std::runtime_error(message), position_(position), line_(line), column_(column) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t position_;
  std::size_t line_;
  std::size_t column_;
};

// A computation that ran but could not produce a certified answer
// (e.g. random samples never agreed).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ginlab
