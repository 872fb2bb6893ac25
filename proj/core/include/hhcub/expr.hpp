#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhcub {

/// Parsed arithmetic expression over x1..xn.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' factor)?
///   base   := number | var | func '(' expr ')' | '(' expr ')' | '-' factor
///   func   := exp | sin | cos | log | sqrt
///   var    := 'x' digits              (1-indexed)
///
/// Unary minus takes a whole factor, so -x1^2 is -(x1^2).
class Expr {
 public:
  /// Throws ParseError (0-based character position and expected tokens) or
  /// ArityError for a variable outside x1..xn.
  static Expr parse(std::string_view text, std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  double evaluate(std::span<const double> x) const;
  /// Canonical text with minimal parentheses; parse(str()).str() == str().
  std::string str() const;

 private:
  enum class Op : std::uint8_t { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos, Log, Sqrt };
  struct Node {
    Op op;
    double value = 0.0;
    std::int32_t lhs = -1;  // var index for Var, operand for unary nodes
    std::int32_t rhs = -1;
  };

  friend class ExprParser;

  double eval(std::int32_t id, std::span<const double> x) const;
  void print(std::int32_t id, std::string& out) const;
  static int precedence(Op op) noexcept;

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t dim_ = 0;
};

}  // namespace hhcub
