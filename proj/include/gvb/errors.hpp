#pragma once

#include <stdexcept>
#include <string>

namespace gvb {

/// Base class of all engine errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ill-formed request: mismatched models, parity violations, bad arity,
/// division by a non-constant, unknown symbols at elaboration time.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A computation tried to raise a jet multi-index beyond the model's
/// configured order cap.
class OrderCapError : public Error {
  public:
    using Error::Error;
};

/// Syntax or elaboration failure with a source position (1-based).
class ParseError : public Error {
  public:
    ParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

}  // namespace gvb
