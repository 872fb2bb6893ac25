#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhcub {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSimplex : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An integrand returned a non-finite value.
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

class NegativeGauge : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class UnknownRule : public Error {
 public:
  using Error::Error;
};

/// A structurally readable object violates a semantic invariant
/// (negative weight, barycentric coordinates off the simplex, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ConvexityScreenFailed : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset for
/// expressions; `line` is 1-based for line-oriented files (0 when unused).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, std::vector<std::string> expected = {},
             std::size_t line = 0)
      : Error(message), position_(position), line_(line), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::size_t line_;
  std::vector<std::string> expected_;
};

/// Variable index outside x1..xn.
class ArityError : public Error {
 public:
  ArityError(const std::string& message, std::size_t position) : Error(message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hhcub
