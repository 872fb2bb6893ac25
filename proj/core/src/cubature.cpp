#include "hhcub/cubature.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hhcub/errors.hpp"
#include "hhcub/moments.hpp"
#include "hhcub/summation.hpp"

namespace hhcub {

namespace {

constexpr double kBarycentricSumTolerance = 1e-12;

std::string short_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Multi-indices of total degree <= 2: 1, x_1..x_n, x_i x_j (i <= j).
std::vector<std::vector<unsigned>> monomials_up_to_degree_two(std::size_t n) {
  std::vector<std::vector<unsigned>> out;
  out.emplace_back(n, 0u);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<unsigned> a(n, 0u);
    a[i] = 1;
    out.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<unsigned> a(n, 0u);
      ++a[i];
      ++a[j];
      out.push_back(std::move(a));
    }
  return out;
}

unsigned degree_of(const std::vector<unsigned>& a) {
  unsigned d = 0;
  for (unsigned e : a) d += e;
  return d;
}

}  // namespace

CubatureRule::CubatureRule(std::size_t n, std::vector<std::vector<double>> nodes, std::vector<double> weights,
                           std::string name)
    : dim_(n), nodes_(std::move(nodes)), weights_(std::move(weights)), name_(std::move(name)) {
  if (dim_ < 1) throw DimensionMismatch("cubature rule needs dimension >= 1");
  if (nodes_.empty()) throw DimensionMismatch("cubature rule needs at least one node");
  if (nodes_.size() != weights_.size())
    throw DimensionMismatch("cubature rule has " + std::to_string(nodes_.size()) + " nodes but " +
                            std::to_string(weights_.size()) + " weights");
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].size() != dim_ + 1)
      throw DimensionMismatch("node " + std::to_string(k) + " needs " + std::to_string(dim_ + 1) +
                              " barycentric coordinates");
    for (double c : nodes_[k])
      if (!std::isfinite(c)) throw DimensionMismatch("node " + std::to_string(k) + " is not finite");
    if (!std::isfinite(weights_[k])) throw DimensionMismatch("weight " + std::to_string(k) + " is not finite");
  }
  exact_nodes_.resize(nodes_.size() * (dim_ + 1));
  exact_weights_.resize(weights_.size());
}

CubatureRule CubatureRule::from_numbers(std::size_t n, const std::vector<std::vector<Number>>& nodes,
                                        const std::vector<Number>& weights, std::string name) {
  std::vector<std::vector<double>> node_values;
  node_values.reserve(nodes.size());
  for (const auto& node : nodes) {
    std::vector<double> v;
    v.reserve(node.size());
    for (const Number& c : node) v.push_back(c.value);
    node_values.push_back(std::move(v));
  }
  std::vector<double> weight_values;
  weight_values.reserve(weights.size());
  for (const Number& w : weights) weight_values.push_back(w.value);

  CubatureRule rule(n, std::move(node_values), std::move(weight_values), std::move(name));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (std::size_t i = 0; i <= n; ++i) rule.exact_nodes_[k * (n + 1) + i] = nodes[k][i].exact;
    rule.exact_weights_[k] = weights[k].exact;
  }
  return rule;
}

bool CubatureRule::is_barycenter_rule() const {
  if (size() != 1 || std::abs(weights_[0] - 1.0) > kExactnessTolerance) return false;
  const double c = 1.0 / static_cast<double>(dim_ + 1);
  for (double l : nodes_[0])
    if (std::abs(l - c) > kExactnessTolerance) return false;
  return true;
}

void check_invariants(const CubatureRule& rule) {
  for (std::size_t k = 0; k < rule.size(); ++k) {
    CompensatedSum s;
    for (double l : rule.nodes()[k]) {
      if (l < 0.0) throw InvariantViolation("negative barycentric coordinate at node " + std::to_string(k));
      s += l;
    }
    if (std::abs(s.value() - 1.0) > kBarycentricSumTolerance)
      throw InvariantViolation("barycentric coordinates of node " + std::to_string(k) + " sum to " +
                               short_real(s.value()) + " ≠ 1");
  }
  CompensatedSum total;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    if (rule.weights()[k] < 0.0) throw InvariantViolation("negative weight at index " + std::to_string(k));
    total += rule.weights()[k];
  }
  if (std::abs(total.value() - 1.0) > kBarycentricSumTolerance)
    throw InvariantViolation("weights sum " + short_real(total.value()) + " ≠ 1");
}

RuleReport verify(const CubatureRule& rule) {
  const std::size_t n = rule.dim();
  RuleReport report;

  report.positivity = true;
  for (double w : rule.weights())
    if (w < 0.0) report.positivity = false;

  report.nodes_inside = true;
  for (const auto& node : rule.nodes()) {
    CompensatedSum s;
    for (double l : node) {
      if (l < 0.0) report.nodes_inside = false;
      s += l;
    }
    if (std::abs(s.value() - 1.0) > kBarycentricSumTolerance) report.nodes_inside = false;
  }

  // sum_k w_k xi_k against (1/(n+1), ..., 1/(n+1)).
  const double centre = 1.0 / static_cast<double>(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    CompensatedSum s;
    for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights()[k] * rule.nodes()[k][i];
    report.barycenter_residual = std::max(report.barycenter_residual, std::abs(s.value() - centre));
  }
  report.barycenter_ok = report.barycenter_residual <= static_cast<double>(n + 2) * kExactnessTolerance;

  // On S1 the physical coordinate x_i is barycentric coordinate i (i >= 1).
  const double n_factorial = static_cast<double>(factorial(static_cast<unsigned>(n)));
  bool ok_through[3] = {true, true, true};
  for (auto& alpha : monomials_up_to_degree_two(n)) {
    CompensatedSum t;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      double term = rule.weights()[k];
      for (std::size_t i = 0; i < n; ++i)
        for (unsigned e = 0; e < alpha[i]; ++e) term *= rule.nodes()[k][i + 1];
      t += term;
    }
    MonomialResidual r;
    r.rule_value = t.value();
    r.mean_value = n_factorial * monomial_moment(n, alpha);
    r.residual = std::abs(r.rule_value - r.mean_value);
    const unsigned d = degree_of(alpha);
    if (r.residual > kExactnessTolerance)
      for (unsigned level = d; level < 3; ++level) ok_through[level] = false;
    report.max_residual = std::max(report.max_residual, r.residual);
    r.exponents = std::move(alpha);
    report.residuals.push_back(std::move(r));
  }
  report.exactness_degree = ok_through[2] ? 2 : ok_through[1] ? 1 : ok_through[0] ? 0 : -1;

  report.hh_applicable = report.positivity && report.nodes_inside && report.barycenter_ok;
  report.second_order_applicable = report.positivity && report.nodes_inside && report.exactness_degree >= 2;
  return report;
}

std::vector<std::string> builtin_rule_names() { return {"barycenter", "vertex", "hh-mix-2d"}; }

CubatureRule builtin_rule(std::string_view name, std::size_t n) {
  if (n < 1) throw DimensionMismatch("cubature rule needs dimension >= 1");
  const auto ni = static_cast<std::int64_t>(n);
  if (name == "barycenter") {
    const Number c{1.0 / static_cast<double>(n + 1), Rational(1, ni + 1)};
    return CubatureRule::from_numbers(n, {std::vector<Number>(n + 1, c)}, {Number{1.0, Rational(1)}},
                                      "barycenter");
  }
  if (name == "vertex") {
    std::vector<std::vector<Number>> nodes(n + 1, std::vector<Number>(n + 1, Number{0.0, Rational(0)}));
    for (std::size_t k = 0; k <= n; ++k) nodes[k][k] = Number{1.0, Rational(1)};
    const std::vector<Number> weights(n + 1, Number{1.0 / static_cast<double>(n + 1), Rational(1, ni + 1)});
    return CubatureRule::from_numbers(n, nodes, weights, "vertex");
  }
  if (name == "hh-mix-2d") {
    if (n != 2) throw DimensionMismatch("hh-mix-2d is a rule on triangles (n = 2)");
    const Number zero{0.0, Rational(0)};
    const Number one{1.0, Rational(1)};
    const Number third{1.0 / 3.0, Rational(1, 3)};
    // Vertices (0,0), (0,1), (1,0) of the unit triangle, then its centroid.
    const std::vector<std::vector<Number>> nodes = {
        {one, zero, zero}, {zero, zero, one}, {zero, one, zero}, {third, third, third}};
    const Number twelfth{1.0 / 12.0, Rational(1, 12)};
    const std::vector<Number> weights = {twelfth, twelfth, twelfth, Number{0.75, Rational(3, 4)}};
    return CubatureRule::from_numbers(2, nodes, weights, "hh-mix-2d");
  }
  throw UnknownRule("unknown rule '" + std::string(name) + "' (known: barycenter, vertex, hh-mix-2d)");
}

double apply(const CubatureRule& rule, const ScalarField& f, const Simplex& s) {
  if (rule.dim() != s.dim() || f.dim() != s.dim())
    throw DimensionMismatch("apply: rule, field and simplex dimensions must agree");
  CompensatedSum sum;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Point x = s.point_at(rule.nodes()[k]);
    sum += rule.weights()[k] * f(x.coords());
  }
  return s.volume() * sum.value();
}

CubatureRule parse_rule(std::string_view text, std::string name) {
  const auto lines = tokenize_lines(text);
  std::size_t cursor = 0;
  auto next_line = [&](const char* what) -> const TextLine& {
    if (cursor >= lines.size()) {
      const std::size_t last = lines.empty() ? 1 : lines.back().number;
      throw ParseError("rule file: unexpected end of file, expected " + std::string(what), 0, {what}, last);
    }
    return lines[cursor++];
  };
  auto fail = [](const TextLine& line, const std::string& msg) -> ParseError {
    return ParseError("rule file line " + std::to_string(line.number) + ": " + msg, 0, {}, line.number);
  };
  auto header = [&](const char* keyword) {
    const TextLine& line = next_line(keyword);
    if (line.tokens.size() != 2 || line.tokens[0] != keyword) throw fail(line, "expected '" + std::string(keyword) + " <count>'");
    const auto num = parse_number(line.tokens[1]);
    if (!num || !num->exact || num->exact->den() != 1 || num->exact->num() < 1)
      throw fail(line, "'" + std::string(line.tokens[1]) + "' is not a positive integer");
    return static_cast<std::size_t>(num->exact->num());
  };
  auto number = [&](const TextLine& line, std::string_view tok) {
    const auto num = parse_number(tok);
    if (!num) throw fail(line, "'" + std::string(tok) + "' is not a number");
    return *num;
  };

  const std::size_t n = header("dim");
  const std::size_t m = header("nodes");

  std::vector<std::vector<Number>> nodes;
  for (std::size_t k = 0; k < m; ++k) {
    const TextLine& line = next_line("node coordinates");
    if (line.tokens.size() != n + 1)
      throw fail(line, "node needs " + std::to_string(n + 1) + " barycentric coordinates, got " +
                           std::to_string(line.tokens.size()));
    std::vector<Number> node;
    for (auto tok : line.tokens) node.push_back(number(line, tok));
    nodes.push_back(std::move(node));
  }
  std::vector<Number> weights;
  for (std::size_t k = 0; k < m; ++k) {
    const TextLine& line = next_line("weight");
    if (line.tokens.size() != 1) throw fail(line, "expected a single weight");
    weights.push_back(number(line, line.tokens[0]));
  }
  if (cursor < lines.size()) throw fail(lines[cursor], "trailing content after the last weight");

  CubatureRule rule = CubatureRule::from_numbers(n, nodes, weights, std::move(name));
  check_invariants(rule);
  return rule;
}

CubatureRule load_rule(const std::filesystem::path& path) {
  return parse_rule(read_file(path.string()), path.filename().string());
}

std::string format_rule(const CubatureRule& rule) {
  auto value = [](const std::optional<Rational>& exact, double v) { return exact ? exact->str() : format_real(v); };
  std::ostringstream out;
  if (!rule.name().empty()) out << "# " << rule.name() << '\n';
  out << "dim " << rule.dim() << '\n';
  out << "nodes " << rule.size() << '\n';
  for (std::size_t k = 0; k < rule.size(); ++k) {
    for (std::size_t i = 0; i <= rule.dim(); ++i)
      out << (i ? " " : "") << value(rule.exact_node(k, i), rule.nodes()[k][i]);
    out << '\n';
  }
  for (std::size_t k = 0; k < rule.size(); ++k) out << value(rule.exact_weight(k), rule.weights()[k]) << '\n';
  return out.str();
}

void save_rule(const CubatureRule& rule, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write rule file '" + path.string() + "'", 0);
  out << format_rule(rule);
}

}  // namespace hhcub
