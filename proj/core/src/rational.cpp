#include "hhcub/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hhcub {

namespace {

__extension__ using wide = __int128;

wide wide_gcd(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::pair<std::int64_t, std::int64_t> reduce(wide num, wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  const auto [n, d] = reduce(num, den);
  num_ = n;
  den_ = d;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    const auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  const auto n = parse_int(text.substr(0, slash));
  const auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

Rational operator+(const Rational& a, const Rational& b) {
  const auto [n, d] = reduce(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                             static_cast<wide>(a.den_) * b.den_);
  return Rational(n, d, Rational::Reduced{});
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const auto [n, d] = reduce(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
  return Rational(n, d, Rational::Reduced{});
}

Rational operator/(const Rational& a, const Rational& b) {
  const auto [n, d] = reduce(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
  return Rational(n, d, Rational::Reduced{});
}

Rational Rational::operator-() const {
  const auto [n, d] = reduce(-static_cast<wide>(num_), den_);
  return Rational(n, d, Reduced{});
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
}

}  // namespace hhcub
