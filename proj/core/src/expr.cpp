#include "hhcub/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "hhcub/errors.hpp"
#include "hhcub/text.hpp"

namespace hhcub {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Expr run() {
    expr_.dim_ = n_;
    expr_.root_ = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"+", "-", "*", "/", "^"});
    return std::move(expr_);
  }

 private:
  using Op = Expr::Op;

  std::int32_t add(Op op, std::int32_t lhs = -1, std::int32_t rhs = -1, double value = 0.0) {
    expr_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<std::int32_t>(expr_.nodes_.size() - 1);
  }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    std::string msg = "parse error at position " + std::to_string(pos_) + ": " + what;
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or '" : "'") + expected[i] + "'";
    }
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t parse_expr() {
    std::int32_t lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = add(Op::Add, lhs, parse_term());
      else if (accept('-'))
        lhs = add(Op::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  std::int32_t parse_term() {
    std::int32_t lhs = parse_factor();
    for (;;) {
      if (accept('*'))
        lhs = add(Op::Mul, lhs, parse_factor());
      else if (accept('/'))
        lhs = add(Op::Div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  std::int32_t parse_factor() {
    const std::int32_t base = parse_base();
    if (accept('^')) return add(Op::Pow, base, parse_factor());
    return base;
  }

  std::int32_t parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", {"number", "variable", "function", "(", "-"});
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return add(Op::Neg, parse_factor());
    }
    if (c == '(') {
      ++pos_;
      const std::int32_t inner = parse_expr();
      if (!accept(')')) fail(pos_ >= text_.size() ? "unexpected end of input" : "unexpected token", {")"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'", {"number", "variable", "function", "(", "-"});
  }

  std::int32_t parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits();
      else
        pos_ = save;
    }
    const auto num = parse_number_token(text_.substr(start, pos_ - start));
    if (!num) {
      pos_ = start;
      fail("malformed number", {"number"});
    }
    return add(Op::Number, -1, -1, *num);
  }

  static std::optional<double> parse_number_token(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  }

  std::int32_t parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      std::size_t index = 0;
      const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec != std::errc{} || index < 1 || index > n_)
        throw ArityError("variable '" + std::string(name) + "' at position " + std::to_string(start) +
                             " is outside x1..x" + std::to_string(n_),
                         start);
      return add(Op::Var, static_cast<std::int32_t>(index - 1));
    }

    Op fn;
    if (name == "exp")
      fn = Op::Exp;
    else if (name == "sin")
      fn = Op::Sin;
    else if (name == "cos")
      fn = Op::Cos;
    else if (name == "log")
      fn = Op::Log;
    else if (name == "sqrt")
      fn = Op::Sqrt;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'", {"variable", "function"});
    }
    if (!accept('(')) fail("missing argument list", {"("});
    const std::int32_t arg = parse_expr();
    if (!accept(')')) fail(pos_ >= text_.size() ? "unexpected end of input" : "unexpected token", {")"});
    return add(fn, arg);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
  Expr expr_;
};

Expr Expr::parse(std::string_view text, std::size_t n) { return ExprParser(text, n).run(); }

double Expr::evaluate(std::span<const double> x) const { return eval(root_, x); }

double Expr::eval(std::int32_t id, std::span<const double> x) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  switch (node.op) {
    case Op::Number: return node.value;
    case Op::Var: return x[static_cast<std::size_t>(node.lhs)];
    case Op::Add: return eval(node.lhs, x) + eval(node.rhs, x);
    case Op::Sub: return eval(node.lhs, x) - eval(node.rhs, x);
    case Op::Mul: return eval(node.lhs, x) * eval(node.rhs, x);
    case Op::Div: return eval(node.lhs, x) / eval(node.rhs, x);
    case Op::Pow: {
      const double b = eval(node.lhs, x);
      const double e = eval(node.rhs, x);
      if (e == 2.0) return b * b;
      return std::pow(b, e);
    }
    case Op::Neg: return -eval(node.lhs, x);
    case Op::Exp: return std::exp(eval(node.lhs, x));
    case Op::Sin: return std::sin(eval(node.lhs, x));
    case Op::Cos: return std::cos(eval(node.lhs, x));
    case Op::Log: return std::log(eval(node.lhs, x));
    case Op::Sqrt: return std::sqrt(eval(node.lhs, x));
  }
  return 0.0;
}

int Expr::precedence(Op op) noexcept {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

void Expr::print(std::int32_t id, std::string& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  auto child = [&](std::int32_t c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  auto prec_of = [&](std::int32_t c) { return precedence(nodes_[static_cast<std::size_t>(c)].op); };

  switch (node.op) {
    case Op::Number: out += format_real(node.value); return;
    case Op::Var: out += 'x' + std::to_string(node.lhs + 1); return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(node.op);
      const char sym = node.op == Op::Add ? '+' : node.op == Op::Sub ? '-' : node.op == Op::Mul ? '*' : '/';
      child(node.lhs, prec_of(node.lhs) < p);
      out += ' ';
      out += sym;
      out += ' ';
      child(node.rhs, prec_of(node.rhs) <= p);
      return;
    }
    case Op::Pow:
      child(node.lhs, prec_of(node.lhs) <= precedence(Op::Pow));
      out += '^';
      child(node.rhs, prec_of(node.rhs) < precedence(Op::Neg));
      return;
    case Op::Neg:
      out += '-';
      child(node.lhs, prec_of(node.lhs) < precedence(Op::Neg));
      return;
    case Op::Exp: out += "exp("; break;
    case Op::Sin: out += "sin("; break;
    case Op::Cos: out += "cos("; break;
    case Op::Log: out += "log("; break;
    case Op::Sqrt: out += "sqrt("; break;
  }
  print(node.lhs, out);
  out += ')';
}

std::string Expr::str() const {
  std::string out;
  print(root_, out);
  return out;
}

}  // namespace hhcub
