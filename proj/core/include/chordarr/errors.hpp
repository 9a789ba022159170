#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chordarr {

// Malformed or inconsistent user input (bad labels, bad family spec, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text input that could not be parsed. Carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A counting run would materialize more partial embeddings than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A window or point sits on a line it must avoid.
class DegeneracyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An internal consistency check failed; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chordarr
