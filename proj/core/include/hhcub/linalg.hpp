#pragma once

// Small dense linear algebra for simplex-sized problems (n is single digits
// in practice). Row-major storage, no expression templates.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hhcub {

/// A point (or vector) in R^n.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n, double value = 0.0) : coords_(n, value) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s);

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(double s, Point a);

double dot(std::span<const double> a, std::span<const double> b);
double norm_squared(std::span<const double> a);
double norm(std::span<const double> a);

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  Matrix transposed() const;
  Point apply(std::span<const double> x) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  double determinant() const noexcept { return det_; }
  bool singular() const noexcept { return singular_; }
  /// Solves A x = b. Precondition: !singular().
  Point solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double det_ = 1.0;
  bool singular_ = false;
};

double determinant(const Matrix& a);

}  // namespace hhcub
