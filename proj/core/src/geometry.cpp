#include "hhcub/geometry.hpp"

#include <cmath>
#include <sstream>

#include "hhcub/errors.hpp"
#include "hhcub/text.hpp"

namespace hhcub {

namespace {

constexpr double kDegeneracyFactor = 1e-13;

Matrix edge_matrix(const std::vector<Point>& v) {
  const std::size_t n = v.front().dim();
  Matrix e(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) e(i, j) = v[j + 1][i] - v[0][i];
  return e;
}

}  // namespace

unsigned long long factorial(unsigned n) {
  if (n > 20) throw UnsupportedDimension("factorial(" + std::to_string(n) + ") exceeds 64-bit range");
  unsigned long long f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

AffineChart::AffineChart(Point origin, Matrix edges)
    : origin_(std::move(origin)), edges_(std::move(edges)), lu_(edges_), jacobian_(std::abs(lu_.determinant())) {
  if (lu_.singular() || jacobian_ == 0.0) throw DegenerateSimplex("affine chart is singular");
}

Point AffineChart::to_physical(std::span<const double> u) const {
  if (u.size() != origin_.dim()) throw DimensionMismatch("chart: reference point has wrong dimension");
  Point x = edges_.apply(u);
  x += origin_;
  return x;
}

Point AffineChart::to_reference(std::span<const double> x) const {
  if (x.size() != origin_.dim()) throw DimensionMismatch("chart: physical point has wrong dimension");
  Point d(std::vector<double>(x.begin(), x.end()));
  d -= origin_;
  return lu_.solve(d);
}

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw DimensionMismatch("simplex needs at least 2 vertices");
  dim_ = vertices_.size() - 1;
  for (const Point& p : vertices_) {
    if (p.dim() != dim_)
      throw DimensionMismatch("simplex with " + std::to_string(vertices_.size()) + " vertices needs points in R^" +
                              std::to_string(dim_) + ", got R^" + std::to_string(p.dim()));
    for (double c : p)
      if (!std::isfinite(c)) throw DimensionMismatch("simplex vertex has a non-finite coordinate");
  }

  double longest_sq = -1.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      const double len_sq = norm_squared((vertices_[j] - vertices_[i]).coords());
      if (len_sq > longest_sq) {
        longest_sq = len_sq;
        split_edge_ = {i, j};
      }
    }
  longest_edge_ = std::sqrt(longest_sq);

  jacobian_ = std::abs(determinant(edge_matrix(vertices_)));
  const double threshold = kDegeneracyFactor * std::pow(longest_edge_, static_cast<double>(dim_));
  if (!(jacobian_ > threshold)) throw DegenerateSimplex("simplex vertices are (numerically) affinely dependent");
  volume_ = jacobian_ / static_cast<double>(factorial(static_cast<unsigned>(dim_)));
}

Simplex Simplex::unit(std::size_t n) {
  std::vector<Point> v(n + 1, Point(n));
  for (std::size_t i = 0; i < n; ++i) v[i + 1][i] = 1.0;
  return Simplex(std::move(v));
}

Point Simplex::barycenter() const {
  Point c(dim_);
  for (const Point& p : vertices_) c += p;
  c *= 1.0 / static_cast<double>(dim_ + 1);
  return c;
}

AffineChart Simplex::chart() const { return AffineChart(vertices_.front(), edge_matrix(vertices_)); }

Point Simplex::point_at(std::span<const double> barycentric) const {
  if (barycentric.size() != dim_ + 1) throw DimensionMismatch("barycentric coordinates need n+1 entries");
  Point x(dim_);
  for (std::size_t k = 0; k <= dim_; ++k)
    for (std::size_t i = 0; i < dim_; ++i) x[i] += barycentric[k] * vertices_[k][i];
  return x;
}

std::pair<Simplex, Simplex> Simplex::bisect() const {
  const auto [i, j] = split_edge_;
  Point mid = 0.5 * (vertices_[i] + vertices_[j]);
  std::vector<Point> first = vertices_;
  std::vector<Point> second = vertices_;
  first[j] = mid;
  second[i] = std::move(mid);
  return {Simplex(std::move(first)), Simplex(std::move(second))};
}

Simplex parse_simplex(std::string_view text) {
  const auto lines = tokenize_lines(text);
  if (lines.empty()) throw ParseError("simplex: no vertices", 0, {"number"}, 1);
  std::vector<Point> vertices;
  vertices.reserve(lines.size());
  const std::size_t width = lines.front().tokens.size();
  for (const TextLine& line : lines) {
    if (line.tokens.size() != width)
      throw ParseError("simplex: line " + std::to_string(line.number) + " has " + std::to_string(line.tokens.size()) +
                           " coordinates, expected " + std::to_string(width),
                       0, {}, line.number);
    Point p(width);
    for (std::size_t k = 0; k < width; ++k) {
      const auto num = parse_number(line.tokens[k]);
      if (!num)
        throw ParseError("simplex: line " + std::to_string(line.number) + ": '" + std::string(line.tokens[k]) +
                             "' is not a number",
                         0, {"number"}, line.number);
      p[k] = num->value;
    }
    vertices.push_back(std::move(p));
  }
  if (vertices.size() != width + 1)
    throw ParseError("simplex: " + std::to_string(vertices.size()) + " vertices given for dimension " +
                         std::to_string(width) + ", expected " + std::to_string(width + 1),
                     0, {}, lines.back().number);
  return Simplex(std::move(vertices));
}

Simplex load_simplex(const std::filesystem::path& path) { return parse_simplex(read_file(path.string())); }

std::string format_simplex(const Simplex& s) {
  std::ostringstream out;
  for (const Point& p : s.vertices()) {
    for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? " " : "") << format_real(p[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace hhcub
