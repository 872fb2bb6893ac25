#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhcub/linalg.hpp"

namespace hhcub {

/// Affine map from the unit simplex {0, e_1, ..., e_n} onto a simplex:
/// u -> origin + E u, with column i of E equal to p_{i+1} - p_0.
class AffineChart {
 public:
  AffineChart(Point origin, Matrix edges);

  const Point& origin() const noexcept { return origin_; }
  const Matrix& matrix() const noexcept { return edges_; }
  /// |det E| = n! vol(S).
  double jacobian() const noexcept { return jacobian_; }

  Point to_physical(std::span<const double> u) const;
  Point to_reference(std::span<const double> x) const;

 private:
  Point origin_;
  Matrix edges_;
  LuDecomposition lu_;
  double jacobian_;
};

/// Non-degenerate simplex in R^n with n+1 vertices kept in construction order.
/// Immutable; every instance has passed the degeneracy test.
class Simplex {
 public:
  /// Throws DimensionMismatch for ragged/miscounted vertices and
  /// DegenerateSimplex when |det E| <= 1e-13 * (longest edge)^n.
  explicit Simplex(std::vector<Point> vertices);

  /// {0, e_1, ..., e_n}.
  static Simplex unit(std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_.at(i); }

  Point barycenter() const;
  double volume() const noexcept { return volume_; }
  /// |det E|
  double jacobian() const noexcept { return jacobian_; }
  double longest_edge() const noexcept { return longest_edge_; }

  AffineChart chart() const;

  /// Point with the given barycentric coordinates (n+1 entries).
  Point point_at(std::span<const double> barycentric) const;

  /// Splits at the midpoint of the longest edge (p_i, p_j), ties broken by the
  /// lexicographically smallest (i, j). The first child replaces p_j by the
  /// midpoint, the second replaces p_i.
  std::pair<Simplex, Simplex> bisect() const;

  /// Vertex indices of the edge bisect() would split.
  std::pair<std::size_t, std::size_t> longest_edge_indices() const noexcept { return split_edge_; }

 private:
  std::vector<Point> vertices_;
  std::size_t dim_ = 0;
  double jacobian_ = 0.0;
  double volume_ = 0.0;
  double longest_edge_ = 0.0;
  std::pair<std::size_t, std::size_t> split_edge_{0, 1};
};

/// n! for n <= 20; throws UnsupportedDimension beyond.
unsigned long long factorial(unsigned n);

/// One vertex per line, whitespace-separated decimals; blank lines and text
/// after '#' are ignored. Throws ParseError (with 1-based line) or the
/// Simplex constructor's errors.
Simplex parse_simplex(std::string_view text);
Simplex load_simplex(const std::filesystem::path& path);
std::string format_simplex(const Simplex& s);

}  // namespace hhcub
