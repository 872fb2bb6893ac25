#pragma once

#include <cstddef>
#include <optional>

#include "hhcub/cubature.hpp"
#include "hhcub/errors.hpp"
#include "hhcub/field.hpp"
#include "hhcub/geometry.hpp"

namespace hhcub {

/// Error certificate: |int_S f - estimate| <= radius whenever
/// k_used >= ||d^2 f||_inf on S. `k_certified` is false when that constant
/// was itself sampled.
struct CertifiedResult {
  double estimate = 0.0;
  double radius = 0.0;
  double k_used = 0.0;
  bool k_certified = false;
  std::size_t cells = 1;

  double lower() const noexcept { return estimate - radius; }
  double upper() const noexcept { return estimate + radius; }
};

/// Hermite-Hadamard bracket of int_S f for convex f.
struct SandwichResult {
  double lower = 0.0;  // vol(S) f(barycenter)
  double upper = 0.0;  // vol(S) * mean of the vertex values
};

/// Thrown by rule_bound when the rule lacks positivity or degree-2 exactness.
class RuleNotApplicable : public Error {
 public:
  RuleNotApplicable(const std::string& message, RuleReport report) : Error(message), report_(std::move(report)) {}
  const RuleReport& report() const noexcept { return report_; }

 private:
  RuleReport report_;
};

/// The caller asserts f is convex on S. With `screen_resolution` set, the
/// Hessian is checked on that lattice first and ConvexityScreenFailed is
/// thrown when some eigenvalue drops below -1e-8 minus the screen's
/// finite-difference noise floor.
SandwichResult hh_sandwich(const ScalarField& f, const Simplex& s,
                           std::optional<unsigned> screen_resolution = std::nullopt);

/// estimate = vol(S) f(barycenter), radius = (K/2) int_S |x - barycenter|^2.
/// Throws NegativeGauge for K < 0.
CertifiedResult midpoint_bound(const ScalarField& f, const Simplex& s, CurvatureBound k);

/// estimate = apply(rule, f, S), radius = K int_S |x - barycenter|^2.
/// Requires verify(rule).second_order_applicable; throws RuleNotApplicable otherwise.
CertifiedResult rule_bound(const CubatureRule& rule, const ScalarField& f, const Simplex& s, CurvatureBound k);

/// rule_bound, except that the single-node barycenter rule is routed to
/// midpoint_bound for its halved constant.
CertifiedResult certify(const CubatureRule& rule, const ScalarField& f, const Simplex& s, CurvatureBound k);

}  // namespace hhcub
