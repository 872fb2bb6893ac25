#pragma once

// Closed-form moments on the unit simplex S1 = conv{0, e_1, ..., e_n} and
// the second central moment over arbitrary simplices.
//
// All factorials are exact 64-bit integers, which limits the dimension to
// n + 2 <= 20; larger n throws UnsupportedDimension.

#include <cstddef>
#include <optional>
#include <span>

#include "hhcub/field.hpp"
#include "hhcub/geometry.hpp"
#include "hhcub/linalg.hpp"
#include "hhcub/qform.hpp"
#include "hhcub/rational.hpp"

namespace hhcub {

inline constexpr std::size_t kMaxMomentDimension = 18;

struct MomentTable {
  std::size_t dim = 0;
  double volume = 0.0;          // 1/n!
  double first = 0.0;           // int x_i       = 1/(n+1)!
  double square = 0.0;          // int x_i^2     = 2/(n+2)!
  double mixed = 0.0;           // int x_i x_j   = 1/(n+2)!, i != j
  double central_scalar = 0.0;  // int |x - c|^2 = n^2/((n+2)!(n+1))
  /// M_ij = int (x_i - c_i)(x_j - c_j) dx, c the barycenter of S1.
  Matrix central_matrix;
};

/// Same quantities as exact fractions; a field is empty when its reduced
/// fraction does not fit in 64 bits.
struct ExactMomentTable {
  std::optional<Rational> volume, first, square, mixed, central_scalar, central_diagonal, central_off_diagonal;
};

MomentTable moment_table(std::size_t n);
ExactMomentTable exact_moment_table(std::size_t n);

/// int_{S1} x^alpha dx = (prod alpha_i!) / (n + |alpha|)! for |alpha| <= 2.
/// Throws UnsupportedDegree for |alpha| > 2, DimensionMismatch when
/// alpha.size() != n.
double monomial_moment(std::size_t n, std::span<const unsigned> alpha);
Rational monomial_moment_exact(std::size_t n, std::span<const unsigned> alpha);

/// int_{S1} |x - barycenter|^2 dx.
double central_second_moment_unit(std::size_t n);

/// int_S |x - barycenter(S)|^2 dx = |det E| trace(E^T E M).
double central_second_moment(const Simplex& s);

/// q(x) = constant + linear . x + x^T A x.
struct Poly2 {
  double constant = 0.0;
  Point linear;
  QuadraticForm quadratic;

  static Poly2 zero(std::size_t n) { return {0.0, Point(n), QuadraticForm::zero(n)}; }

  std::size_t dim() const noexcept { return linear.dim(); }
  double operator()(std::span<const double> x) const;
  /// Field with the exact Hessian 2A.
  ScalarField as_field() const;
};

/// Exact int_S q dx, expanding q through the affine chart onto S1 monomials.
double integrate_poly2(const Poly2& q, const Simplex& s);

}  // namespace hhcub
