#include "hhcub/qform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhcub/errors.hpp"

namespace hhcub {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void require_same_dim(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("quadratic forms of different dimension");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Matrix a, double tolerance) {
  const std::size_t n = a.rows();
  const double target = tolerance * frobenius_norm(a);
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle annihilating a(p,q); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

QuadraticForm::QuadraticForm(const Matrix& coeffs) : a_(coeffs.rows(), coeffs.cols()) {
  if (coeffs.rows() != coeffs.cols()) throw DimensionMismatch("quadratic form needs a square coefficient array");
  const std::size_t n = coeffs.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(coeffs(i, j))) throw std::invalid_argument("quadratic form coefficient is not finite");
      a_(i, j) = i == j ? coeffs(i, i) : 0.5 * (coeffs(i, j) + coeffs(j, i));
    }
}

QuadraticForm QuadraticForm::zero(std::size_t n) { return QuadraticForm(Matrix(n, n)); }
QuadraticForm QuadraticForm::identity(std::size_t n) { return QuadraticForm(Matrix::identity(n)); }

double QuadraticForm::evaluate(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionMismatch("quadratic form evaluated at a point of the wrong dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) row += a_(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

double QuadraticForm::operator_norm() const {
  if (dim() == 0) return 0.0;
  const auto eig = eigenvalues();
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

double QuadraticForm::sum_abs_bound() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) s += std::abs(a_(i, j));
  return s;
}

std::vector<double> QuadraticForm::eigenvalues() const { return symmetric_eigenvalues(a_); }

double QuadraticForm::min_eigenvalue() const { return eigenvalues().front(); }

QuadraticForm& QuadraticForm::operator+=(const QuadraticForm& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) a_(i, j) += other.a_(i, j);
  return *this;
}

QuadraticForm& QuadraticForm::operator-=(const QuadraticForm& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) a_(i, j) -= other.a_(i, j);
  return *this;
}

QuadraticForm& QuadraticForm::operator*=(double s) {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) a_(i, j) *= s;
  return *this;
}

QuadraticForm operator+(QuadraticForm a, const QuadraticForm& b) { return a += b; }
QuadraticForm operator-(QuadraticForm a, const QuadraticForm& b) { return a -= b; }
QuadraticForm operator*(double s, QuadraticForm a) { return a *= s; }

}  // namespace hhcub
