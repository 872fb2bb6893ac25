#include "hhcub/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hhcub/errors.hpp"

namespace hhcub {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::optional<Number> parse_number(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (auto r = Rational::parse(token)) return Number{r->to_double(), r};
  if (token.find('/') != std::string_view::npos) return std::nullopt;
  std::string_view s = token;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return Number{v, std::nullopt};
}

std::vector<TextLine> tokenize_lines(std::string_view text) {
  std::vector<TextLine> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    TextLine tl{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) tl.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!tl.tokens.empty()) lines.push_back(std::move(tl));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hhcub
