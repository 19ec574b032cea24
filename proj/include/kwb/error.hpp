#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwb {

/// Input outside an operation's domain: ring mismatch, zero where nonzero is
/// required, singular matrix, non-primitive vector, and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation hit its resource cap (Groebner basis size/degree, search
/// nodes). Signals the input is beyond desk scale, not that it is invalid.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Self-check failure inside an algorithm. Seeing one is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        message_(what),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kwb
