#pragma once

// Number formatting and the line-oriented tokenizer shared by the simplex
// and rule file readers.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhcub/rational.hpp"

namespace hhcub {

/// %.17g; enough digits to round-trip any double.
std::string format_real(double x);

struct Number {
  double value = 0.0;
  std::optional<Rational> exact;  // set when the token was an integer or p/q
};

/// Decimal (strtod syntax) or fraction "p/q". nullopt on malformed input.
std::optional<Number> parse_number(std::string_view token);

struct TextLine {
  std::size_t number;  // 1-based
  std::vector<std::string_view> tokens;
};

/// Splits on newlines, strips '#' comments, tokenizes on whitespace and drops
/// lines that end up empty. Views point into `text`.
std::vector<TextLine> tokenize_lines(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace hhcub
