#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hhcub/linalg.hpp"

namespace hhcub {

/// phi(x) = sum_ij a_ij x_i x_j with a symmetric coefficient array.
///
/// The constructor stores (a_ij + a_ji) / 2, which leaves phi unchanged and
/// makes the spectral machinery valid. Second differentials are represented
/// the same way: the form of d^2 f(u) has the Hessian matrix as coefficients.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  /// Throws DimensionMismatch for non-square input, std::invalid_argument for
  /// non-finite entries.
  explicit QuadraticForm(const Matrix& coeffs);

  static QuadraticForm zero(std::size_t n);
  static QuadraticForm identity(std::size_t n);

  std::size_t dim() const noexcept { return a_.rows(); }
  double coeff(std::size_t i, std::size_t j) const noexcept { return a_(i, j); }
  const Matrix& coeffs() const noexcept { return a_; }

  /// x^T A x. Throws DimensionMismatch.
  double evaluate(std::span<const double> x) const;

  /// sup{|phi(x)| : |x| = 1}, i.e. the largest |eigenvalue| of A.
  double operator_norm() const;
  /// sum over all n^2 entries of |a_ij|; an upper bound of operator_norm().
  double sum_abs_bound() const;

  /// Eigenvalues in ascending order (cyclic Jacobi).
  std::vector<double> eigenvalues() const;
  double min_eigenvalue() const;

  QuadraticForm& operator+=(const QuadraticForm& other);
  QuadraticForm& operator-=(const QuadraticForm& other);
  QuadraticForm& operator*=(double s);

 private:
  Matrix a_;
};

QuadraticForm operator+(QuadraticForm a, const QuadraticForm& b);
QuadraticForm operator-(QuadraticForm a, const QuadraticForm& b);
QuadraticForm operator*(double s, QuadraticForm a);

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Sweeps until
/// the off-diagonal Frobenius norm drops to `tolerance` times the Frobenius
/// norm of the input. Returns eigenvalues in ascending order.
std::vector<double> symmetric_eigenvalues(Matrix a, double tolerance = 1e-13);

}  // namespace hhcub
