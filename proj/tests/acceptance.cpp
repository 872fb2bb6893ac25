// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hhcub/adaptive.hpp"
#include "hhcub/bounds.hpp"
#include "hhcub/cubature.hpp"
#include "hhcub/field.hpp"
#include "hhcub/moments.hpp"
#include "hhcub/qform.hpp"
#include "hhcub/text.hpp"
#include "test_support.hpp"

namespace {

using namespace hhcub;
using hhcub::testing::kE;
using hhcub::testing::Rng;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("violated: " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime limit
  std::function<Outcome()> body;
};

const std::filesystem::path kData = HHCUB_TEST_DATA_DIR;

double exact_central_constant(std::size_t n) {
  const double nd = static_cast<double>(n);
  double fact = 1.0;
  for (std::size_t k = 2; k <= n + 2; ++k) fact *= static_cast<double>(k);
  return nd * nd / (fact * (nd + 1.0));
}

Outcome constants_table() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    const double expected = exact_central_constant(n);
    const double value = central_second_moment_unit(n);
    const MomentTable t = moment_table(n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += t.central_matrix(i, i);
    const auto exact = exact_moment_table(n).central_scalar;
    o.require(testing::relative_error(value, expected) <= 1e-14, "constant n=" + std::to_string(n));
    o.require(testing::relative_error(trace, expected) <= 1e-14, "trace(M) n=" + std::to_string(n));
    o.note("n=" + std::to_string(n) + ": " + format_real(value) + " = " + (exact ? exact->str() : "?"));
  }
  o.note("n=4 evaluates to 1/225; the value 1/63 quoted alongside the criterion does not follow from the formula");
  return o;
}

Outcome hh_mix_exp_bound() {
  Outcome o;
  const CubatureRule rule = builtin_rule("hh-mix-2d", 2);
  const RuleReport report = verify(rule);
  o.require(report.positivity, "positivity");
  o.require(report.exactness_degree == 2, "degree-2 exactness");
  o.require(report.max_residual <= 1e-14, "residuals <= 1e-14");
  o.note("max residual " + format_real(report.max_residual));

  const ScalarField f = parse_expr("exp(x1+x2)", 2);
  const double reference = 1.0;  // int_0^1 s e^s ds
  const double t = apply(rule, f, Simplex::unit(2));
  const double bound = (1.0 / 18.0) * 2.0 * kE;
  const double error = std::abs(reference - t);
  o.require(error <= bound, "|int f - T(f)| <= (1/18) 2e");
  o.note(fmt("T(f) = %.17g, reference 1, error %.6g, bound %.6g, ratio %.4f", t, error, bound));
  o.note(fmt("ratio against reference e-2: %.4f (e-2 = %.6f is below the sandwich lower bound %.6f)",
             std::abs((kE - 2.0) - t) / bound, kE - 2.0, std::exp(2.0 / 3.0) / 2.0));
  const CertifiedResult cert = certify(rule, f, Simplex::unit(2), CurvatureBound::user_supplied(2.0 * kE));
  o.require(std::abs(cert.radius - bound) <= 1e-15, "certify radius equals (1/18) 2e");
  return o;
}

Outcome sharpness() {
  Outcome o;
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const Simplex s = testing::random_simplex(n, rng);
    const ScalarField f = ScalarField::analytic(
        n, [](std::span<const double> x) { return norm_squared(x); },
        [n](std::span<const double>) { return 2.0 * QuadraticForm::identity(n); });
    const CertifiedResult r = midpoint_bound(f, s, CurvatureBound::user_supplied(2.0));
    const double truth = testing::tensor_quadrature([](std::span<const double> x) { return norm_squared(x); }, s, 4);
    const double rel = testing::relative_error(std::abs(truth - r.estimate), r.radius);
    worst = std::max(worst, rel);
    o.require(rel <= 1e-12, "equality on simplex " + std::to_string(trial));
    if (rel > 1e-12) {
      // The error is a difference of two O(|int f|) doubles; its resolution
      // relative to the radius is limited to about eps |int f| / radius.
      const double conditioning = std::abs(truth) / r.radius;
      o.note(fmt("  simplex %.0f (n = %.0f): relative gap %.3g", trial, static_cast<double>(n), rel) +
             fmt(", |int f| / radius = %.3g, rounding floor ~ %.3g", conditioning,
                 conditioning * std::numeric_limits<double>::epsilon()));
    }
  }
  o.note("worst relative gap " + format_real(worst));
  return o;
}

Outcome sandwich_suite() {
  Outcome o;
  Rng rng(77);
  int passed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const Simplex s = testing::random_simplex(n, rng);
    Poly2 q = Poly2::zero(n);
    q.constant = testing::uniform(rng);
    q.linear = testing::random_point(n, rng);
    q.quadratic = testing::random_psd_form(n, rng);
    const SandwichResult r = hh_sandwich(q.as_field(), s);
    const double exact = integrate_poly2(q, s);
    if (r.lower - 1e-10 <= exact && exact <= r.upper + 1e-10) ++passed;
  }
  o.require(passed == 200, "all 200 cases contained");
  o.note(std::to_string(passed) + "/200 contained");
  return o;
}

Outcome moment_oracle() {
  Outcome o;
  Rng rng(5150);
  int monomial_ok = 0;
  int central_ok = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    const Simplex s = testing::random_simplex(n, rng);
    const std::uint64_t seed = 9000 + static_cast<std::uint64_t>(trial);

    // A degree-2 monomial on S1 of the same dimension.
    std::vector<unsigned> alpha(n, 0);
    ++alpha[static_cast<std::size_t>(trial) % n];
    ++alpha[static_cast<std::size_t>(trial / 2) % n];
    const auto mono = testing::monte_carlo(
        [&](std::span<const double> x) {
          double v = 1.0;
          for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = 0; e < alpha[i]; ++e) v *= x[i];
          return v;
        },
        Simplex::unit(n), 1'000'000, seed);
    if (std::abs(monomial_moment(n, alpha) - mono.mean) <= 3.0 * mono.standard_error) ++monomial_ok;

    const Point c = s.barycenter();
    const auto central = testing::monte_carlo(
        [&](std::span<const double> x) {
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i) d += (x[i] - c[i]) * (x[i] - c[i]);
          return d;
        },
        s, 1'000'000, seed + 500);
    if (std::abs(central_second_moment(s) - central.mean) <= 3.0 * central.standard_error) ++central_ok;
  }
  o.require(monomial_ok >= 9, "monomial moments within 3 SE in >= 9/10");
  o.require(central_ok >= 9, "central moments within 3 SE in >= 9/10");
  o.note("monomial " + std::to_string(monomial_ok) + "/10, central " + std::to_string(central_ok) + "/10");
  return o;
}

struct BatteryCase {
  const char* expr;
  const char* simplex;
  std::size_t dim;
  double reference;
};

const std::vector<BatteryCase>& battery() {
  static const std::vector<BatteryCase> cases{
      {"exp(x1+x2)", "unit2.spx", 2, 1.0},
      {"exp(x1)", "unit1.spx", 1, kE - 1.0},
      {"sin(x1)*cos(x2)", "unit2.spx", 2, (std::sin(1.0) - std::cos(1.0)) / 2.0},
  };
  return cases;
}

Outcome adaptive_battery() {
  Outcome o;
  for (const BatteryCase& c : battery()) {
    const Simplex s = load_simplex(kData / c.simplex);
    const ScalarField f = parse_expr(c.expr, c.dim);
    AdaptiveConfig cfg;
    cfg.tolerance = 1e-6;
    const AdaptiveResult r = integrate_adaptive(f, s, cfg);
    const double error = std::abs(r.result.estimate - c.reference);
    o.require(error <= r.result.radius, std::string(c.expr) + ": error <= radius");
    o.require(r.result.radius <= 1e-6, std::string(c.expr) + ": radius <= 1e-6");
    o.note(std::string(c.expr) + fmt(": error %.3g, radius %.6g, cells %.0f", error, r.result.radius,
                                     static_cast<double>(r.result.cells)));
    if (c.reference == 1.0)
      o.note(fmt("  against e-2 the error would be %.6g, far outside the radius", std::abs(r.result.estimate - (kE - 2.0))));
  }
  return o;
}

Outcome norm_axioms() {
  Outcome o;
  Rng rng(31337);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    const QuadraticForm phi = testing::random_form(n, rng, 2.0);
    const QuadraticForm psi = testing::random_form(n, rng, 2.0);
    const Point x = testing::random_point(n, rng, -3.0, 3.0);
    const double alpha = testing::uniform(rng, -5.0, 5.0);
    const double norm = phi.operator_norm();
    if (!(std::abs(phi.evaluate(x.coords())) <= norm * norm_squared(x.coords()) + 1e-10)) ++violations;
    if (!(norm <= phi.sum_abs_bound() + 1e-12)) ++violations;
    if (!(testing::relative_error((alpha * phi).operator_norm(), std::abs(alpha) * norm) <= 1e-12)) ++violations;
    if (!((phi + psi).operator_norm() <= norm + psi.operator_norm() + 1e-10)) ++violations;
  }
  o.require(violations == 0, "zero violations");
  o.note(std::to_string(violations) + " violations over 1000 forms");
  return o;
}

std::string random_polynomial(std::size_t n, Rng& rng) {
  // Random cubic: constant, linear, quadratic and cubic monomials.
  std::ostringstream s;
  s.precision(17);
  s << testing::uniform(rng);
  for (std::size_t i = 1; i <= n; ++i) {
    s << " + " << testing::uniform(rng) << "*x" << i;
    for (std::size_t j = i; j <= n; ++j) {
      s << " + " << testing::uniform(rng) << "*x" << i << "*x" << j;
      for (std::size_t k = j; k <= n; ++k) s << " + " << testing::uniform(rng) << "*x" << i << "*x" << j << "*x" << k;
    }
  }
  return s.str();
}

Outcome convexify_lattice() {
  Outcome o;
  Rng rng(4242);
  double worst_eig = 0.0;
  double worst_excess = -1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const ScalarField f = parse_expr(random_polynomial(n, rng), n);
    const Simplex s = testing::random_simplex(n, rng, 1.0);
    const double k = d2f_sup_norm(f, s, 20).value;
    const auto [plus, minus] = convexify(f, k);
    for (const auto& lambda : barycentric_lattice(n, 20)) {
      const Point u = s.point_at(lambda);
      for (const ScalarField* g : {&plus, &minus}) {
        const QuadraticForm h = g->hessian_at(u.coords());
        const double eig = h.min_eigenvalue();
        const double excess = h.operator_norm() - 2.0 * k;
        worst_eig = std::min(worst_eig, eig);
        worst_excess = std::max(worst_excess, excess);
      }
    }
  }
  o.require(worst_eig >= -1e-8, "min eigenvalue >= -1e-8");
  o.require(worst_excess <= 1e-8, "||d2(g +- f)|| <= 2K + 1e-8");
  o.note("worst min eigenvalue " + format_real(worst_eig) + ", worst norm - 2K " + format_real(worst_excess));
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const BatteryCase& c : battery()) {
    const std::string simplex = (kData / c.simplex).string();
    std::string outputs[2];
    int codes[2];
    const char* threads[2] = {"1", "8"};
    for (int i = 0; i < 2; ++i) {
      std::ostringstream out;
      std::ostringstream err;
      codes[i] = cli::run({"--threads", threads[i], "integrate", "--expr", c.expr, "--simplex", simplex, "--tol", "1e-6"},
                          out, err);
      outputs[i] = out.str();
    }
    o.require(codes[0] == cli::kSuccess && codes[1] == cli::kSuccess, std::string(c.expr) + ": exit status 0");
    o.require(outputs[0] == outputs[1], std::string(c.expr) + ": byte-identical output");
    o.note(std::string(c.expr) + ": " + std::to_string(outputs[0].size()) + " bytes, " +
           (outputs[0] == outputs[1] ? "identical" : "different"));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "unit-simplex constant n^2/((n+2)!(n+1)) and trace(M), n = 1..6", 1.0, constants_table},
      {2, "hh-mix-2d degree-2 exactness and (1/18)||d2f|| bound on exp(x1+x2)", 1.0, hh_mix_exp_bound},
      {3, "midpoint bound attained by |x|^2 on 20 random simplices", 1.0, sharpness},
      {4, "sandwich on 200 random convex quadratics", 5.0, sandwich_suite},
      {5, "moments vs 1e6-sample Monte Carlo on 10 random simplices", 30.0, moment_oracle},
      {6, "adaptive certificates on the smooth battery at tolerance 1e-6", 60.0, adaptive_battery},
      {7, "quadratic-form norm axioms on 1000 random forms", 5.0, norm_axioms},
      {8, "g +- f lattice convexity and norm bound on 20 random polynomials", 10.0, convexify_lattice},
      {9, "integrate output identical for --threads 1 and --threads 8", 0.0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.note(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && seconds > c.limit_seconds) {
      outcome.pass = false;
      outcome.note(fmt("runtime %.2f s exceeds the %.0f s limit", seconds, c.limit_seconds));
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %d: %s (%.2f s", outcome.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds);
    if (c.limit_seconds > 0.0) std::printf(", limit %.0f s", c.limit_seconds);
    std::printf(")\n");
    for (const std::string& d : outcome.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
