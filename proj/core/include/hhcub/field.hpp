#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhcub/geometry.hpp"
#include "hhcub/qform.hpp"

namespace hhcub {

/// Central-difference step used for black-box integrands.
inline constexpr double kDefaultFdStep = 1e-4;
/// Default lattice resolution for sampling second differentials.
inline constexpr unsigned kDefaultLatticeResolution = 20;

/// A C^2 integrand f : R^n -> R.
///
/// Second differentials come from an analytic callback when one is supplied,
/// otherwise from central differences with absolute step h. In FD mode f is
/// sampled at u +- h e_i, so it must be defined on an h-neighbourhood of the
/// simplex of interest.
///
/// Evaluators must be pure and reentrant; a ScalarField may be shared across
/// threads.
class ScalarField {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;
  using Hessian = std::function<QuadraticForm(std::span<const double>)>;

  static ScalarField finite_difference(std::size_t n, Evaluator f, double step = kDefaultFdStep);
  static ScalarField analytic(std::size_t n, Evaluator f, Hessian hessian);

  std::size_t dim() const noexcept { return dim_; }
  bool has_analytic_hessian() const noexcept { return static_cast<bool>(hessian_); }
  double fd_step() const noexcept { return step_; }

  /// Throws DimensionMismatch, or EvaluationFailure on a non-finite value.
  double operator()(std::span<const double> x) const;
  double operator()(const Point& x) const { return (*this)(x.coords()); }

  /// Form of d^2 f(u); coefficients are the Hessian matrix.
  QuadraticForm hessian_at(std::span<const double> u) const;

 private:
  ScalarField(std::size_t n, Evaluator f, Hessian h, double step)
      : dim_(n), eval_(std::move(f)), hessian_(std::move(h)), step_(step) {}

  QuadraticForm fd_hessian(std::span<const double> u) const;

  std::size_t dim_ = 0;
  Evaluator eval_;
  Hessian hessian_;
  double step_ = kDefaultFdStep;
};

inline QuadraticForm hessian_at(const ScalarField& f, std::span<const double> u) { return f.hessian_at(u); }

/// A value for ||d^2 f||_inf together with whether it is a proven bound.
struct CurvatureBound {
  double value = 0.0;
  bool certified = false;

  /// A constant the caller vouches for (e.g. derived by hand).
  static CurvatureBound user_supplied(double k) { return {k, true}; }
};

/// All lattice points of mesh 1/resolution in barycentric coordinates
/// (C(n + r, n) points, vertices and faces included), in lexicographic order
/// of the integer multi-index.
std::vector<std::vector<double>> barycentric_lattice(std::size_t n, unsigned resolution);

/// Max of ||d^2 f(u)|| over the barycentric lattice of S. Never certified.
/// Throws std::invalid_argument for resolution 0, DimensionMismatch, or
/// propagates EvaluationFailure.
CurvatureBound d2f_sup_norm(const ScalarField& f, const Simplex& s, unsigned resolution = kDefaultLatticeResolution);

/// Returns (g + f, g - f) with g(x) = (K/2) |x|^2. Both carry the analytic
/// Hessian K I +- d^2 f. Throws NegativeGauge for K < 0.
std::pair<ScalarField, ScalarField> convexify(const ScalarField& f, double k);

struct ConvexityScreen {
  double min_eigenvalue = 0.0;
  Point worst_point;
  /// Rounding floor of the sampled eigenvalues: 4 n eps max|f| / h^2 for
  /// finite-difference fields, 0 for analytic Hessians.
  double noise_floor = 0.0;
};

/// Smallest Hessian eigenvalue over the barycentric lattice of S.
ConvexityScreen convexity_screen(const ScalarField& f, const Simplex& s,
                                 unsigned resolution = kDefaultLatticeResolution);

/// Parses an expression over x1..xn (see Expr) into a finite-difference field.
ScalarField parse_expr(std::string_view text, std::size_t n);

}  // namespace hhcub
