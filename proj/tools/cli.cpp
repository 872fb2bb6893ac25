#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "hhcub/adaptive.hpp"
#include "hhcub/bounds.hpp"
#include "hhcub/cubature.hpp"
#include "hhcub/errors.hpp"
#include "hhcub/field.hpp"
#include "hhcub/geometry.hpp"
#include "hhcub/moments.hpp"
#include "hhcub/text.hpp"

namespace hhcub::cli {

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string short_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string interval(double lo, double hi) { return "[" + format_real(lo) + ", " + format_real(hi) + "]"; }

std::string exact_or_dash(const std::optional<Rational>& r) { return r ? r->str() : "-"; }

std::string monomial_name(const std::vector<unsigned>& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (unsigned e = 0; e < alpha[i]; ++e) {
      if (!s.empty()) s += '*';
      s += 'x' + std::to_string(i + 1);
    }
  }
  return s.empty() ? "1" : s;
}

/// Existing file path first, then a built-in rule name.
CubatureRule resolve_rule(const std::string& spec, std::size_t dim) {
  if (std::filesystem::is_regular_file(spec)) return load_rule(spec);
  return builtin_rule(spec, dim);
}

struct Common {
  unsigned threads = 0;
};

struct MomentsOptions {
  std::size_t dim = 2;
};

int cmd_moments(const MomentsOptions& o, std::ostream& out) {
  const MomentTable t = moment_table(o.dim);
  const ExactMomentTable x = exact_moment_table(o.dim);
  out << "unit simplex moments, n = " << o.dim << '\n';
  auto row = [&](const std::string& name, double value, const std::optional<Rational>& exact) {
    out << pad(name, 18) << pad(format_real(value), 26) << exact_or_dash(exact) << '\n';
  };
  out << pad("quantity", 18) << pad("decimal", 26) << "exact" << '\n';
  row("vol(S1)", t.volume, x.volume);
  row("int x_i", t.first, x.first);
  row("int x_i^2", t.square, x.square);
  if (o.dim >= 2) row("int x_i x_j", t.mixed, x.mixed);
  row("int |x-c|^2", t.central_scalar, x.central_scalar);
  row("M_ii", t.central_matrix(0, 0), x.central_diagonal);
  if (o.dim >= 2) row("M_ij", t.central_matrix(0, 1), x.central_off_diagonal);
  double trace = 0.0;
  for (std::size_t i = 0; i < o.dim; ++i) trace += t.central_matrix(i, i);
  row("trace(M)", trace, x.central_scalar);
  return kSuccess;
}

struct VerifyOptions {
  std::string rule;
  std::size_t dim = 2;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const CubatureRule rule = resolve_rule(o.rule, o.dim);
  const RuleReport r = verify(rule);
  out << "rule: " << rule.name() << '\n';
  out << "dimension: " << rule.dim() << '\n';
  out << "nodes: " << rule.size() << '\n';
  out << "positive: " << yes_no(r.positivity) << '\n';
  out << "nodes inside: " << yes_no(r.nodes_inside) << '\n';
  out << "barycenter: " << yes_no(r.barycenter_ok) << " (residual " << format_real(r.barycenter_residual) << ")\n";
  out << "exactness: " << (r.exactness_degree < 0 ? std::string("none") : std::to_string(r.exactness_degree))
      << '\n';
  out << "HH: " << yes_no(r.hh_applicable) << '\n';
  out << "second-order bound: " << yes_no(r.second_order_applicable) << '\n';
  out << pad("monomial", 12) << pad("rule", 26) << pad("mean", 26) << "residual" << '\n';
  for (const MonomialResidual& m : r.residuals)
    out << pad(monomial_name(m.exponents), 12) << pad(format_real(m.rule_value), 26)
        << pad(format_real(m.mean_value), 26) << format_real(m.residual) << '\n';
  return r.second_order_applicable ? kSuccess : kVerificationFailure;
}

struct FieldOptions {
  std::string expr;
  std::string simplex;
};

struct BoundOptions {
  FieldOptions field;
  std::string rule = "hh-mix-2d";
  std::optional<double> k;
  unsigned resolution = kDefaultLatticeResolution;
};

int cmd_bound(const BoundOptions& o, std::ostream& out) {
  const Simplex s = load_simplex(o.field.simplex);
  const ScalarField f = parse_expr(o.field.expr, s.dim());
  const CubatureRule rule = resolve_rule(o.rule, s.dim());
  const CurvatureBound k = o.k ? CurvatureBound::user_supplied(*o.k) : d2f_sup_norm(f, s, o.resolution);
  const CertifiedResult r = certify(rule, f, s, k);
  out << "rule: " << rule.name() << '\n';
  out << "bound: " << (rule.is_barycenter_rule() ? "midpoint, (K/2) int |x-c|^2" : "positive degree-2 rule, K int |x-c|^2")
      << '\n';
  out << "estimate: " << format_real(r.estimate) << '\n';
  out << "radius: " << format_real(r.radius) << '\n';
  out << "K: " << format_real(r.k_used)
      << (o.k ? " (user supplied)" : " (lattice estimate, resolution " + std::to_string(o.resolution) + ")") << '\n';
  out << "certified: " << yes_no(r.k_certified) << '\n';
  out << "interval: " << interval(r.lower(), r.upper()) << '\n';
  return kSuccess;
}

struct SandwichOptions {
  FieldOptions field;
  std::optional<unsigned> screen;
};

int cmd_sandwich(const SandwichOptions& o, std::ostream& out) {
  const Simplex s = load_simplex(o.field.simplex);
  const ScalarField f = parse_expr(o.field.expr, s.dim());
  const SandwichResult r = hh_sandwich(f, s, o.screen);
  out << "volume: " << format_real(s.volume()) << '\n';
  out << "lower: " << format_real(r.lower) << "  (vol * f(barycenter))\n";
  out << "upper: " << format_real(r.upper) << "  (vol * mean vertex value)\n";
  out << "width: " << format_real(r.upper - r.lower) << '\n';
  out << "screened: " << (o.screen ? "yes, resolution " + std::to_string(*o.screen) : std::string("no")) << '\n';
  return kSuccess;
}

struct IntegrateOptions {
  FieldOptions field;
  double tolerance = 1e-6;
  std::optional<std::string> rule;
  std::size_t max_cells = 1'000'000;
  unsigned max_depth = 60;
  std::string k_mode = "cell";
  unsigned cell_resolution = 4;
  std::optional<double> k;
  std::uint64_t seed = 1;
  std::size_t oracle_samples = 0;
  std::optional<std::string> report;
};

void write_report(const AdaptiveResult& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write report '" + path + "'", 0);
  out << "cells " << r.result.cells << '\n';
  out << "rounds " << r.rounds << '\n';
  out << "estimate " << format_real(r.result.estimate) << '\n';
  out << "radius " << format_real(r.result.radius) << '\n';
  out << "K_min " << format_real(r.k_min) << '\n';
  out << "K_mean " << format_real(r.k_mean) << '\n';
  out << "K_max " << format_real(r.k_max) << '\n';
  out << "converged " << yes_no(r.converged) << '\n';
  out << '\n' << pad("depth", 8) << "cells" << '\n';
  for (std::size_t d = 0; d < r.depth_histogram.size(); ++d)
    if (r.depth_histogram[d] > 0) out << pad(std::to_string(d), 8) << r.depth_histogram[d] << '\n';
}

int cmd_integrate(const IntegrateOptions& o, const Common& common, std::ostream& out) {
  const Simplex s = load_simplex(o.field.simplex);
  const ScalarField f = parse_expr(o.field.expr, s.dim());
  AdaptiveConfig cfg;
  cfg.tolerance = o.tolerance;
  cfg.max_cells = o.max_cells;
  cfg.max_depth = o.max_depth;
  if (o.rule) cfg.rule = resolve_rule(*o.rule, s.dim());
  cfg.k_mode = o.k_mode == "global" ? CurvatureMode::Global : CurvatureMode::PerCell;
  cfg.cell_resolution = o.cell_resolution;
  cfg.k_override = o.k;
  cfg.threads = common.threads;

  AdaptiveResult result;
  int code = kSuccess;
  try {
    result = integrate_adaptive(f, s, cfg);
  } catch (const BudgetExhausted& e) {
    result = e.partial();
    code = kBudgetExhausted;
  }

  const CertifiedResult& r = result.result;
  out << "rule: " << (cfg.rule ? cfg.rule->name() : std::string("midpoint")) << '\n';
  out << "estimate: " << format_real(r.estimate) << '\n';
  out << "radius: " << format_real(r.radius) << '\n';
  out << "interval: " << interval(r.lower(), r.upper()) << '\n';
  out << "tolerance: " << short_real(o.tolerance) << '\n';
  out << "cells: " << r.cells << '\n';
  out << "rounds: " << result.rounds << '\n';
  out << "K: min " << format_real(result.k_min) << ", mean " << format_real(result.k_mean) << ", max "
      << format_real(result.k_max) << (o.k ? " (user supplied)" : " (lattice estimates)") << '\n';
  out << "certified: " << yes_no(r.k_certified) << '\n';
  out << "status: " << (code == kSuccess ? "converged" : "budget exhausted") << '\n';
  if (o.oracle_samples > 0) {
    const OracleEstimate mc = oracle_integrate(f, s, o.oracle_samples, o.seed);
    out << "oracle: " << format_real(mc.mean) << " +- " << format_real(mc.standard_error) << " (" << o.oracle_samples
        << " samples, seed " << o.seed << ")\n";
  }
  if (o.report) write_report(result, *o.report);
  return code;
}

void add_field_options(CLI::App* cmd, FieldOptions& o) {
  cmd->add_option("--expr", o.expr, "Integrand over x1..xn, e.g. \"exp(x1+x2)\"")->required();
  cmd->add_option("--simplex", o.simplex, "Simplex file: one vertex per line")->required()->check(CLI::ExistingFile);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified cubature on simplices with Hermite-Hadamard error bounds", "hhcub"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads for adaptive integration (0 = all cores)")
      ->check(CLI::Range(0u, 1024u));

  MomentsOptions mo;
  auto* moments = app.add_subcommand("moments", "Print closed-form moments of the unit simplex");
  moments->add_option("--dim", mo.dim, "Dimension n")->required()->check(CLI::Range(std::size_t{1}, kMaxMomentDimension));

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify-rule", "Check positivity, barycenter and degree-2 exactness");
  verify_cmd->add_option("rule", vo.rule, "Rule file (or built-in name)")->required();
  verify_cmd->add_option("--dim", vo.dim, "Dimension for built-in rules");

  BoundOptions bo;
  auto* bound = app.add_subcommand("bound", "Single-cell error certificate for a rule");
  bound->add_option("--rule", bo.rule, "Built-in name or rule file");
  add_field_options(bound, bo.field);
  bound->add_option("--K", bo.k, "Known bound on ||d^2 f|| (certified)");
  bound->add_option("--resolution", bo.resolution, "Lattice resolution for estimating K")->check(CLI::PositiveNumber);

  SandwichOptions so;
  auto* sandwich = app.add_subcommand("sandwich", "Hermite-Hadamard bracket for a convex integrand");
  add_field_options(sandwich, so.field);
  sandwich->add_option("--screen", so.screen, "Check convexity on a lattice of this resolution first")
      ->check(CLI::PositiveNumber);

  IntegrateOptions io;
  auto* integrate = app.add_subcommand("integrate", "Adaptive certified integration");
  add_field_options(integrate, io.field);
  integrate->add_option("--tol", io.tolerance, "Target certificate radius")->required()->check(CLI::PositiveNumber);
  integrate->add_option("--rule", io.rule, "Built-in name or rule file (default: midpoint)");
  integrate->add_option("--max-cells", io.max_cells, "Cell budget")->check(CLI::PositiveNumber);
  integrate->add_option("--max-depth", io.max_depth, "Bisection depth limit");
  integrate->add_option("--k-mode", io.k_mode, "Curvature estimate per cell or global")
      ->check(CLI::IsMember({"cell", "global"}));
  integrate->add_option("--cell-resolution", io.cell_resolution, "Per-cell lattice resolution")
      ->check(CLI::PositiveNumber);
  integrate->add_option("--K", io.k, "Known bound on ||d^2 f|| (certified)");
  integrate->add_option("--seed", io.seed, "Seed for the Monte Carlo cross-check");
  integrate->add_option("--oracle-samples", io.oracle_samples, "Monte Carlo cross-check samples (0 = off)");
  integrate->add_option("--report", io.report, "Write a cell/depth report to this file");

  for (auto* sub : {moments, verify_cmd, bound, sandwich, integrate}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*moments) return cmd_moments(mo, out);
    if (*verify_cmd) return cmd_verify(vo, out);
    if (*bound) return cmd_bound(bo, out);
    if (*sandwich) return cmd_sandwich(so, out);
    if (*integrate) return cmd_integrate(io, common, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ArityError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnknownRule& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const RuleNotApplicable& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kInputError;
}

}  // namespace hhcub::cli
