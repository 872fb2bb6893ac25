#include "hhcub/bounds.hpp"

#include <cmath>

#include "hhcub/errors.hpp"
#include "hhcub/moments.hpp"
#include "hhcub/summation.hpp"
#include "hhcub/text.hpp"

namespace hhcub {

namespace {

constexpr double kConvexityTolerance = 1e-8;

void require_gauge(const CurvatureBound& k) {
  if (!(k.value >= 0.0)) throw NegativeGauge("curvature constant K must be nonnegative, got " + format_real(k.value));
}

void require_dims(const ScalarField& f, const Simplex& s) {
  if (f.dim() != s.dim()) throw DimensionMismatch("field and simplex dimensions differ");
}

}  // namespace

SandwichResult hh_sandwich(const ScalarField& f, const Simplex& s, std::optional<unsigned> screen_resolution) {
  require_dims(f, s);
  if (screen_resolution) {
    const ConvexityScreen screen = convexity_screen(f, s, *screen_resolution);
    if (screen.min_eigenvalue < -(kConvexityTolerance + screen.noise_floor))
      throw ConvexityScreenFailed("integrand is not convex on the simplex: Hessian eigenvalue " +
                                  format_real(screen.min_eigenvalue) + " on the sampling lattice");
  }
  CompensatedSum vertices;
  for (const Point& p : s.vertices()) vertices += f(p.coords());
  const double n1 = static_cast<double>(s.dim() + 1);
  return {s.volume() * f(s.barycenter().coords()), s.volume() * (vertices.value() / n1)};
}

CertifiedResult midpoint_bound(const ScalarField& f, const Simplex& s, CurvatureBound k) {
  require_gauge(k);
  require_dims(f, s);
  CertifiedResult r;
  r.estimate = s.volume() * f(s.barycenter().coords());
  r.radius = 0.5 * k.value * central_second_moment(s);
  r.k_used = k.value;
  r.k_certified = k.certified;
  return r;
}

CertifiedResult rule_bound(const CubatureRule& rule, const ScalarField& f, const Simplex& s, CurvatureBound k) {
  require_gauge(k);
  require_dims(f, s);
  if (rule.dim() != s.dim()) throw DimensionMismatch("rule and simplex dimensions differ");
  RuleReport report = verify(rule);
  if (!report.second_order_applicable) {
    std::string why = !report.positivity        ? "has a negative weight"
                      : !report.nodes_inside    ? "has a node outside the simplex"
                                                : "is exact only to degree " + std::to_string(report.exactness_degree);
    throw RuleNotApplicable("rule '" + rule.name() + "' " + why + "; the bound needs a positive degree-2 exact rule",
                            std::move(report));
  }
  CertifiedResult r;
  r.estimate = apply(rule, f, s);
  r.radius = k.value * central_second_moment(s);
  r.k_used = k.value;
  r.k_certified = k.certified;
  return r;
}

CertifiedResult certify(const CubatureRule& rule, const ScalarField& f, const Simplex& s, CurvatureBound k) {
  if (rule.dim() == s.dim() && rule.is_barycenter_rule()) return midpoint_bound(f, s, k);
  return rule_bound(rule, f, s, k);
}

}  // namespace hhcub
