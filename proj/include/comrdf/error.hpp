#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comrdf {

// Bad or inconsistent user input (missing file, singular cell, natoms mismatch).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in one of the text inputs. Carries the 1-based line number.
struct ParseError : InputError {
  ParseError(const std::string& source, std::size_t line, const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ": " + what),
      line_number(line) {}
  std::size_t line_number;
};

// A molecule that could not be made whole within the sweep limit.
struct UnfoldError : InputError {
  using InputError::InputError;
};

} // namespace comrdf
