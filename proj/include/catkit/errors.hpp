#pragma once

#include <stdexcept>
#include <string>

namespace catkit {

// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (formula, vocabulary, structure or theory files).
// Positions are 1-based; 0 means "not applicable".
struct SyntaxError : Error {
  int line = 0;
  int column = 0;
  SyntaxError(const std::string& what, int line_ = 0, int column_ = 0)
      : Error(format(what, line_, column_)), line(line_), column(column_) {}

  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
};

// Well-formed input that violates a precondition: arity mismatches,
// unknown or clashing symbols, unbound variables, non-sentences, ...
struct SemanticError : Error {
  using Error::Error;
};

// A requested search space exceeds the configured capacity.
struct CapacityError : Error {
  using Error::Error;
};

// An internal invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace catkit
