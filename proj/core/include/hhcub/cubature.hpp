#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhcub/field.hpp"
#include "hhcub/geometry.hpp"
#include "hhcub/text.hpp"

namespace hhcub {

/// Absolute tolerance for moment residuals on S1.
inline constexpr double kExactnessTolerance = 1e-12;

/// T(f) = sum_k w_k f(xi_k) as a mean-value functional: nodes are
/// barycentric coordinates (n+1 entries) and the weights of a valid rule sum
/// to 1. Integrals are vol(S) * T(f).
///
/// Construction only checks structure (sizes, finiteness). Semantic
/// invariants (w_k >= 0, nodes inside the simplex, sum w_k = 1) are either
/// enforced by check_invariants() or reported by verify().
class CubatureRule {
 public:
  CubatureRule(std::size_t n, std::vector<std::vector<double>> nodes, std::vector<double> weights,
               std::string name = {});
  /// Keeps exact fractions so save_rule() can write them back verbatim.
  static CubatureRule from_numbers(std::size_t n, const std::vector<std::vector<Number>>& nodes,
                                   const std::vector<Number>& weights, std::string name = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<std::vector<double>>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::string& name() const noexcept { return name_; }

  /// Exact representation of node k coordinate i / weight k, if known.
  const std::optional<Rational>& exact_node(std::size_t k, std::size_t i) const {
    return exact_nodes_.at(k * (dim_ + 1) + i);
  }
  const std::optional<Rational>& exact_weight(std::size_t k) const { return exact_weights_.at(k); }

  /// True for a single node at the barycenter with weight 1.
  bool is_barycenter_rule() const;

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> nodes_;
  std::vector<double> weights_;
  std::string name_;
  std::vector<std::optional<Rational>> exact_nodes_;
  std::vector<std::optional<Rational>> exact_weights_;
};

/// Throws InvariantViolation naming the first offending node or weight.
void check_invariants(const CubatureRule& rule);

struct MonomialResidual {
  std::vector<unsigned> exponents;
  double rule_value = 0.0;  // T(x^alpha) on S1
  double mean_value = 0.0;  // n! int_{S1} x^alpha
  double residual = 0.0;    // |rule_value - mean_value|

  bool operator==(const MonomialResidual&) const = default;
};

struct RuleReport {
  bool positivity = false;    // all weights >= 0
  bool nodes_inside = false;  // barycentric coordinates >= 0, summing to 1
  bool barycenter_ok = false;
  double barycenter_residual = 0.0;
  /// Largest d <= 2 such that every monomial of degree <= d is reproduced;
  /// -1 when even constants fail.
  int exactness_degree = -1;
  double max_residual = 0.0;
  std::vector<MonomialResidual> residuals;  // degree 0, 1, 2 monomials, lexicographic
  bool hh_applicable = false;               // sandwich bounds hold
  bool second_order_applicable = false;             // second-differential bound holds

  bool operator==(const RuleReport&) const = default;
};

/// Never throws for structurally valid rules; failures land in the report.
/// The barycenter residual is compared against (n + 2) * kExactnessTolerance,
/// which makes degree-1 exactness imply barycenter_ok.
RuleReport verify(const CubatureRule& rule);

/// Names: "barycenter", "vertex" (any n), "hh-mix-2d" (n = 2).
/// Throws UnknownRule or DimensionMismatch.
CubatureRule builtin_rule(std::string_view name, std::size_t n);
std::vector<std::string> builtin_rule_names();

/// vol(S) * sum_k w_k f(x_k) with compensated accumulation in node order.
double apply(const CubatureRule& rule, const ScalarField& f, const Simplex& s);

/// Rule file:
///   dim n
///   nodes m
///   <m lines of n+1 barycentric coordinates>
///   <m lines, one weight each>
/// Numbers are decimals or exact fractions p/q; '#' starts a comment.
/// Throws ParseError (with line) or InvariantViolation.
CubatureRule parse_rule(std::string_view text, std::string name = {});
CubatureRule load_rule(const std::filesystem::path& path);
std::string format_rule(const CubatureRule& rule);
void save_rule(const CubatureRule& rule, const std::filesystem::path& path);

}  // namespace hhcub
