#include "hhcub/moments.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hhcub/errors.hpp"

namespace hhcub {

namespace {

void require_dimension(std::size_t n) {
  if (n < 1) throw UnsupportedDimension("moments need n >= 1");
  if (n > kMaxMomentDimension)
    throw UnsupportedDimension("moments limited to n <= " + std::to_string(kMaxMomentDimension) +
                               " (factorials beyond 20! lose exactness)");
}

double fact(std::size_t k) { return static_cast<double>(factorial(static_cast<unsigned>(k))); }

std::int64_t fact_int(std::size_t k) { return static_cast<std::int64_t>(factorial(static_cast<unsigned>(k))); }

template <class F>
std::optional<Rational> try_exact(F&& f) {
  try {
    return f();
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

struct MonomialParts {
  unsigned degree;
  unsigned numerator;  // prod alpha_i!
};

MonomialParts split(std::size_t n, std::span<const unsigned> alpha) {
  if (alpha.size() != n) throw DimensionMismatch("multi-index length differs from the dimension");
  unsigned degree = 0;
  unsigned numerator = 1;
  for (unsigned a : alpha) {
    degree += a;
    if (degree > 2) throw UnsupportedDegree("monomial moments are provided up to total degree 2");
    if (a == 2) numerator = 2;
  }
  return {degree, numerator};
}

}  // namespace

double monomial_moment(std::size_t n, std::span<const unsigned> alpha) {
  require_dimension(n);
  const auto [degree, numerator] = split(n, alpha);
  return static_cast<double>(numerator) / fact(n + degree);
}

Rational monomial_moment_exact(std::size_t n, std::span<const unsigned> alpha) {
  require_dimension(n);
  const auto [degree, numerator] = split(n, alpha);
  return Rational(numerator, fact_int(n + degree));
}

double central_second_moment_unit(std::size_t n) {
  require_dimension(n);
  const double nd = static_cast<double>(n);
  return nd * nd / (fact(n + 2) * (nd + 1.0));
}

MomentTable moment_table(std::size_t n) {
  require_dimension(n);
  MomentTable t;
  t.dim = n;
  t.volume = 1.0 / fact(n);
  t.first = 1.0 / fact(n + 1);
  t.square = 2.0 / fact(n + 2);
  t.mixed = 1.0 / fact(n + 2);
  t.central_scalar = central_second_moment_unit(n);

  // Expanding (x_i - c)(x_j - c) with c = 1/(n+1) and collecting over
  // (n+1)(n+2)! gives n on the diagonal and -1 off it. The unreduced
  // three-term form cancels several ulps away, so it appears only in the
  // exact table.
  const double denom = static_cast<double>(n + 1) * fact(n + 2);
  const double diag = static_cast<double>(n) / denom;
  const double off = -1.0 / denom;
  t.central_matrix = Matrix(n, n, off);
  for (std::size_t i = 0; i < n; ++i) t.central_matrix(i, i) = diag;
  return t;
}

ExactMomentTable exact_moment_table(std::size_t n) {
  require_dimension(n);
  const auto ni = static_cast<std::int64_t>(n);
  ExactMomentTable t;
  t.volume = try_exact([&] { return Rational(1, fact_int(n)); });
  t.first = try_exact([&] { return Rational(1, fact_int(n + 1)); });
  t.square = try_exact([&] { return Rational(2, fact_int(n + 2)); });
  t.mixed = try_exact([&] { return Rational(1, fact_int(n + 2)); });
  t.central_scalar = try_exact([&] { return Rational(ni * ni, fact_int(n + 2)) / Rational(ni + 1); });
  const auto centred = [&](const Rational& second) {
    const Rational c(1, ni + 1);
    return second - Rational(2) * c * Rational(1, fact_int(n + 1)) + c * c * Rational(1, fact_int(n));
  };
  t.central_diagonal = try_exact([&] { return centred(Rational(2, fact_int(n + 2))); });
  t.central_off_diagonal = try_exact([&] { return centred(Rational(1, fact_int(n + 2))); });
  return t;
}

double central_second_moment(const Simplex& s) {
  const std::size_t n = s.dim();
  const MomentTable table = moment_table(n);
  const AffineChart chart = s.chart();
  const Matrix& e = chart.matrix();
  const Matrix gram = e.transposed() * e;
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) trace += gram(i, j) * table.central_matrix(i, j);
  return chart.jacobian() * trace;
}

double Poly2::operator()(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionMismatch("polynomial evaluated at a point of the wrong dimension");
  return constant + dot(linear.coords(), x) + quadratic.evaluate(x);
}

ScalarField Poly2::as_field() const {
  const std::size_t n = dim();
  const QuadraticForm hessian = 2.0 * quadratic;
  return ScalarField::analytic(
      n, [q = *this](std::span<const double> x) { return q(x); },
      [hessian](std::span<const double>) { return hessian; });
}

double integrate_poly2(const Poly2& q, const Simplex& s) {
  const std::size_t n = s.dim();
  if (q.dim() != n || q.quadratic.dim() != n) throw DimensionMismatch("integrate_poly2: dimensions differ");
  const AffineChart chart = s.chart();
  const Point& p0 = chart.origin();
  const Matrix& e = chart.matrix();
  const Matrix& a = q.quadratic.coeffs();

  // q(p0 + E u) = c' + l'.u + u^T B u with
  //   c' = q(p0), l' = E^T (b + 2 A p0), B = E^T A E.
  const double c0 = q(p0.coords());
  Point grad = a.apply(p0.coords());
  grad *= 2.0;
  grad += q.linear;
  const Point l = e.transposed().apply(grad.coords());
  const Matrix b = e.transposed() * a * e;

  const MomentTable t = moment_table(n);
  double sum = c0 * t.volume;
  for (std::size_t i = 0; i < n; ++i) sum += l[i] * t.first;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum += b(i, j) * (i == j ? t.square : t.mixed);
  return chart.jacobian() * sum;
}

}  // namespace hhcub
