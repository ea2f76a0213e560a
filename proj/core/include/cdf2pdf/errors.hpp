#pragma once

#include <stdexcept>
#include <string>

namespace cdf2pdf {

// Argument shape/size mismatch (vector lengths, layer widths, grid sizes).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Value outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Non-finite value produced by a numeric routine. `where` is the layer index
// or iteration that produced it, -1 when not applicable.
struct NumericError : std::runtime_error {
  long where = -1;
  explicit NumericError(const std::string& msg, long where_ = -1)
      : std::runtime_error(msg), where(where_) {}
};

// Training loss grew past the divergence guard or went non-finite.
struct DivergenceError : NumericError {
  using NumericError::NumericError;
};

// Malformed text input (CSV, config, model file). `line` is 1-based, 0 when
// the location is not line-oriented.
struct ParseError : std::runtime_error {
  long line = 0;
  explicit ParseError(const std::string& msg, long line_ = 0)
      : std::runtime_error(msg), line(line_) {}
};

// Invalid or incomplete run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A required input artifact (dataset, model) is missing or unreadable.
struct DependencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cdf2pdf
