#include "hhcub/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hhcub/errors.hpp"
#include "hhcub/expr.hpp"

namespace hhcub {

ScalarField ScalarField::finite_difference(std::size_t n, Evaluator f, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  return ScalarField(n, std::move(f), nullptr, step);
}

ScalarField ScalarField::analytic(std::size_t n, Evaluator f, Hessian hessian) {
  return ScalarField(n, std::move(f), std::move(hessian), kDefaultFdStep);
}

double ScalarField::operator()(std::span<const double> x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("field on R^" + std::to_string(dim_) + " evaluated at a point of R^" +
                            std::to_string(x.size()));
  const double v = eval_(x);
  if (!std::isfinite(v)) throw EvaluationFailure("integrand returned a non-finite value");
  return v;
}

QuadraticForm ScalarField::hessian_at(std::span<const double> u) const {
  if (u.size() != dim_) throw DimensionMismatch("hessian_at: point has the wrong dimension");
  if (hessian_) {
    QuadraticForm h = hessian_(u);
    if (h.dim() != dim_) throw DimensionMismatch("analytic Hessian has the wrong dimension");
    return h;
  }
  return fd_hessian(u);
}

QuadraticForm ScalarField::fd_hessian(std::span<const double> u) const {
  const std::size_t n = dim_;
  const double h = step_;
  std::vector<double> x(u.begin(), u.end());
  Matrix hess(n, n);

  const double centre = (*this)(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = (*this)(x);
    x[i] = xi - h;
    const double fm = (*this)(x);
    x[i] = xi;
    hess(i, i) = (fp - 2.0 * centre + fm) / (h * h);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xi = x[i];
      const double xj = x[j];
      auto at = [&](double si, double sj) {
        x[i] = xi + si * h;
        x[j] = xj + sj * h;
        return (*this)(x);
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
      x[i] = xi;
      x[j] = xj;
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return QuadraticForm(hess);
}

std::vector<std::vector<double>> barycentric_lattice(std::size_t n, unsigned resolution) {
  if (resolution == 0) throw std::invalid_argument("lattice resolution must be at least 1");
  std::vector<std::vector<double>> points;
  std::vector<unsigned> index(n + 1, 0);
  const double r = static_cast<double>(resolution);

  // Enumerate k_0..k_{n-1} with sum <= r; k_n takes the remainder.
  auto recurse = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos == n) {
      index[n] = remaining;
      std::vector<double> bary(n + 1);
      for (std::size_t k = 0; k <= n; ++k) bary[k] = static_cast<double>(index[k]) / r;
      points.push_back(std::move(bary));
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      index[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  recurse(recurse, 0, resolution);
  return points;
}

CurvatureBound d2f_sup_norm(const ScalarField& f, const Simplex& s, unsigned resolution) {
  if (f.dim() != s.dim()) throw DimensionMismatch("d2f_sup_norm: field and simplex dimensions differ");
  double best = 0.0;
  for (const auto& bary : barycentric_lattice(s.dim(), resolution)) {
    const Point u = s.point_at(bary);
    best = std::max(best, f.hessian_at(u.coords()).operator_norm());
  }
  return {best, false};
}

std::pair<ScalarField, ScalarField> convexify(const ScalarField& f, double k) {
  if (k < 0.0 || std::isnan(k)) throw NegativeGauge("convexify: gauge constant must be nonnegative");
  const std::size_t n = f.dim();
  auto gauge = [k](std::span<const double> x) { return 0.5 * k * norm_squared(x); };
  const QuadraticForm gauge_hessian = k * QuadraticForm::identity(n);

  ScalarField plus = ScalarField::analytic(
      n, [f, gauge](std::span<const double> x) { return gauge(x) + f(x); },
      [f, gauge_hessian](std::span<const double> u) { return gauge_hessian + f.hessian_at(u); });
  ScalarField minus = ScalarField::analytic(
      n, [f, gauge](std::span<const double> x) { return gauge(x) - f(x); },
      [f, gauge_hessian](std::span<const double> u) { return gauge_hessian - f.hessian_at(u); });
  return {std::move(plus), std::move(minus)};
}

ConvexityScreen convexity_screen(const ScalarField& f, const Simplex& s, unsigned resolution) {
  if (f.dim() != s.dim()) throw DimensionMismatch("convexity_screen: field and simplex dimensions differ");
  ConvexityScreen result{std::numeric_limits<double>::infinity(), Point(s.dim()), 0.0};
  double magnitude = 0.0;
  for (const auto& bary : barycentric_lattice(s.dim(), resolution)) {
    Point u = s.point_at(bary);
    if (!f.has_analytic_hessian()) magnitude = std::max(magnitude, std::abs(f(u)));
    const double lo = f.hessian_at(u.coords()).min_eigenvalue();
    if (lo < result.min_eigenvalue) {
      result.min_eigenvalue = lo;
      result.worst_point = std::move(u);
    }
  }
  const double h = f.fd_step();
  result.noise_floor = 4.0 * static_cast<double>(s.dim()) * std::numeric_limits<double>::epsilon() * magnitude / (h * h);
  return result;
}

ScalarField parse_expr(std::string_view text, std::size_t n) {
  auto expr = std::make_shared<const Expr>(Expr::parse(text, n));
  return ScalarField::finite_difference(n, [expr](std::span<const double> x) { return expr->evaluate(x); });
}

}  // namespace hhcub
