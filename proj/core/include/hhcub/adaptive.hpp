#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hhcub/bounds.hpp"
#include "hhcub/cubature.hpp"
#include "hhcub/errors.hpp"
#include "hhcub/field.hpp"
#include "hhcub/geometry.hpp"

namespace hhcub {

enum class CurvatureMode {
  Global,  // one lattice estimate of ||d^2 f|| on the root simplex
  PerCell  // re-estimated on every cell at a coarse resolution
};

struct RefinementStep {
  std::size_t round = 0;
  std::size_t cells = 0;
  double total_radius = 0.0;
  double total_estimate = 0.0;
};

struct AdaptiveConfig {
  double tolerance = 1e-6;
  std::size_t max_cells = 1'000'000;
  unsigned max_depth = 60;
  /// nullopt selects the midpoint rule with its halved constant.
  std::optional<CubatureRule> rule;
  CurvatureMode k_mode = CurvatureMode::PerCell;
  unsigned cell_resolution = 4;
  unsigned global_resolution = kDefaultLatticeResolution;
  /// A constant vouched for by the caller; replaces every lattice estimate
  /// and makes the certificate unconditional.
  std::optional<double> k_override;
  /// Worker threads for cell evaluation; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Cells refined per round. Fixed independently of `threads`, which is
  /// what makes results identical for every thread count.
  std::size_t batch_size = 64;
  /// Called after the root evaluation and after every refinement round.
  std::function<void(const RefinementStep&)> observer;
};

struct Cell {
  Simplex simplex;
  double estimate = 0.0;
  double radius = 0.0;
  double k_local = 0.0;
  unsigned depth = 0;
  std::uint64_t id = 0;  // creation order; canonical summation key
};

struct AdaptiveResult {
  CertifiedResult result;
  bool converged = false;
  /// Final partition, sorted by id.
  std::vector<Cell> cells;
  std::vector<std::size_t> depth_histogram;
  double k_min = 0.0;
  double k_max = 0.0;
  double k_mean = 0.0;
  std::size_t rounds = 0;
};

/// Refinement stopped on max_cells or max_depth. The partial certificate is
/// still valid, only wider than requested.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& message, AdaptiveResult partial)
      : Error(message), partial_(std::move(partial)) {}
  const AdaptiveResult& partial() const noexcept { return partial_; }

 private:
  AdaptiveResult partial_;
};

/// Estimate and radius of one cell under `cfg`; `global_k` is used in
/// Global mode and ignored otherwise.
Cell evaluate_cell(const ScalarField& f, Simplex simplex, const AdaptiveConfig& cfg, double global_k = 0.0,
                   unsigned depth = 0, std::uint64_t id = 0);

/// Max-radius-first longest-edge refinement until the summed radius is at
/// most cfg.tolerance. Throws std::invalid_argument for a bad config,
/// RuleNotApplicable for a rule without a degree-2 certificate, and
/// BudgetExhausted when the cell or depth limit is reached first.
AdaptiveResult integrate_adaptive(const ScalarField& f, const Simplex& s, const AdaptiveConfig& cfg);

struct OracleEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Plain Monte Carlo with uniform points on S (normalized exponential
/// spacings as barycentric coordinates). Deterministic for a given seed.
OracleEstimate oracle_integrate(const ScalarField& f, const Simplex& s, std::size_t samples, std::uint64_t seed);

}  // namespace hhcub
