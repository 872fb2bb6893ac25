#include "hhcub/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <optional>
#include <string>
#include <utility>
#include <stdexcept>

#include "hhcub/moments.hpp"
#include "hhcub/summation.hpp"
#include "worker_pool.hpp"

namespace hhcub {

namespace {

struct RadiusOrder {
  // Heap front is the largest radius; among equal radii the older cell.
  bool operator()(const Cell& a, const Cell& b) const noexcept {
    if (a.radius != b.radius) return a.radius < b.radius;
    return a.id > b.id;
  }
};

void validate(const AdaptiveConfig& cfg, const Simplex& s, const ScalarField& f) {
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("adaptive: tolerance must be positive");
  if (cfg.max_cells < 1) throw std::invalid_argument("adaptive: max_cells must be at least 1");
  if (cfg.batch_size < 1) throw std::invalid_argument("adaptive: batch_size must be at least 1");
  if (cfg.cell_resolution < 1 || cfg.global_resolution < 1)
    throw std::invalid_argument("adaptive: lattice resolution must be at least 1");
  if (cfg.k_override && !(*cfg.k_override >= 0.0))
    throw NegativeGauge("adaptive: curvature override must be nonnegative");
  if (f.dim() != s.dim()) throw DimensionMismatch("adaptive: field and simplex dimensions differ");
  if (cfg.rule && cfg.rule->dim() != s.dim()) throw DimensionMismatch("adaptive: rule and simplex dimensions differ");
}

bool uses_midpoint(const AdaptiveConfig& cfg) { return !cfg.rule || cfg.rule->is_barycenter_rule(); }

AdaptiveResult summarize(std::vector<Cell> cells, const AdaptiveConfig& cfg, std::size_t rounds) {
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  AdaptiveResult out;
  CompensatedSum estimate;
  CompensatedSum radius;
  CompensatedSum k_sum;
  out.k_min = std::numeric_limits<double>::infinity();
  out.k_max = 0.0;
  for (const Cell& c : cells) {
    estimate += c.estimate;
    radius += c.radius;
    k_sum += c.k_local;
    out.k_min = std::min(out.k_min, c.k_local);
    out.k_max = std::max(out.k_max, c.k_local);
    if (out.depth_histogram.size() <= c.depth) out.depth_histogram.resize(c.depth + 1, 0);
    ++out.depth_histogram[c.depth];
  }
  out.k_mean = k_sum.value() / static_cast<double>(cells.size());
  out.result.estimate = estimate.value();
  out.result.radius = radius.value();
  out.result.k_used = out.k_max;
  out.result.k_certified = cfg.k_override.has_value();
  out.result.cells = cells.size();
  out.converged = out.result.radius <= cfg.tolerance;
  out.rounds = rounds;
  out.cells = std::move(cells);
  return out;
}

}  // namespace

Cell evaluate_cell(const ScalarField& f, Simplex simplex, const AdaptiveConfig& cfg, double global_k, unsigned depth,
                   std::uint64_t id) {
  double k;
  if (cfg.k_override)
    k = *cfg.k_override;
  else if (cfg.k_mode == CurvatureMode::Global)
    k = global_k;
  else
    k = d2f_sup_norm(f, simplex, cfg.cell_resolution).value;

  const bool midpoint = uses_midpoint(cfg);
  const double estimate = midpoint ? simplex.volume() * f(simplex.barycenter().coords()) : apply(*cfg.rule, f, simplex);
  const double radius = (midpoint ? 0.5 : 1.0) * k * central_second_moment(simplex);
  return Cell{std::move(simplex), estimate, radius, k, depth, id};
}

AdaptiveResult integrate_adaptive(const ScalarField& f, const Simplex& s, const AdaptiveConfig& cfg) {
  validate(cfg, s, f);
  if (!uses_midpoint(cfg)) {
    RuleReport report = verify(*cfg.rule);
    if (!report.second_order_applicable)
      throw RuleNotApplicable("adaptive: rule '" + cfg.rule->name() + "' has no degree-2 error bound",
                              std::move(report));
  }

  double global_k = 0.0;
  if (!cfg.k_override && cfg.k_mode == CurvatureMode::Global) global_k = d2f_sup_norm(f, s, cfg.global_resolution).value;

  detail::WorkerPool pool(cfg.threads);
  std::vector<Cell> heap;
  const RadiusOrder order;
  std::uint64_t next_id = 0;
  CompensatedSum running_radius;
  CompensatedSum running_estimate;

  auto push = [&](Cell c) {
    running_radius += c.radius;
    running_estimate += c.estimate;
    heap.push_back(std::move(c));
    std::push_heap(heap.begin(), heap.end(), order);
  };
  auto pop = [&] {
    std::pop_heap(heap.begin(), heap.end(), order);
    Cell c = std::move(heap.back());
    heap.pop_back();
    running_radius += -c.radius;
    running_estimate += -c.estimate;
    return c;
  };
  // The running total drifts by rounding; the stopping decision is confirmed
  // with the same canonical-order sum that summarize() reports.
  auto canonical_radius = [&] {
    std::vector<std::pair<std::uint64_t, double>> radii;
    radii.reserve(heap.size());
    for (const Cell& c : heap) radii.emplace_back(c.id, c.radius);
    std::sort(radii.begin(), radii.end());
    CompensatedSum sum;
    for (const auto& r : radii) sum += r.second;
    return sum.value();
  };

  push(evaluate_cell(f, s, cfg, global_k, 0, next_id++));
  std::size_t rounds = 0;
  auto notify = [&] {
    if (cfg.observer) cfg.observer({rounds, heap.size(), running_radius.value(), running_estimate.value()});
  };
  notify();

  std::string stop_reason;
  std::vector<Cell> parents;
  std::vector<std::optional<Cell>> children;
  for (;;) {
    if (running_radius.value() <= cfg.tolerance && canonical_radius() <= cfg.tolerance) break;

    const std::size_t budget = cfg.max_cells > heap.size() ? cfg.max_cells - heap.size() : 0;
    if (budget == 0) {
      stop_reason = "cell budget of " + std::to_string(cfg.max_cells) + " exhausted";
      break;
    }

    parents.clear();
    while (!heap.empty() && parents.size() < std::min(budget, cfg.batch_size)) {
      if (heap.front().depth >= cfg.max_depth) break;
      parents.push_back(pop());
    }
    if (parents.empty()) {
      stop_reason = "maximum depth " + std::to_string(cfg.max_depth) + " reached";
      break;
    }

    children.assign(2 * parents.size(), std::nullopt);
    pool.parallel_for(children.size(), [&](std::size_t slot) {
      const Cell& parent = parents[slot / 2];
      auto halves = parent.simplex.bisect();
      Simplex piece = slot % 2 == 0 ? std::move(halves.first) : std::move(halves.second);
      children[slot] = evaluate_cell(f, std::move(piece), cfg, global_k, parent.depth + 1, 0);
    });

    for (auto& child : children) {
      child->id = next_id++;
      push(std::move(*child));
    }
    ++rounds;
    notify();
  }

  AdaptiveResult result = summarize(std::move(heap), cfg, rounds);
  if (!result.converged)
    throw BudgetExhausted("adaptive: " + stop_reason + " before reaching tolerance", std::move(result));
  return result;
}

OracleEstimate oracle_integrate(const ScalarField& f, const Simplex& s, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("oracle_integrate: need at least one sample");
  if (f.dim() != s.dim()) throw DimensionMismatch("oracle_integrate: field and simplex dimensions differ");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> spacing(1.0);
  const std::size_t n = s.dim();
  std::vector<double> bary(n + 1);

  // Welford running mean / variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    double total = 0.0;
    for (double& b : bary) {
      b = spacing(rng);
      total += b;
    }
    for (double& b : bary) b /= total;
    const double v = f(s.point_at(bary).coords());
    const double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }
  const double n_samples = static_cast<double>(samples);
  const double variance = samples > 1 ? m2 / (n_samples - 1.0) : 0.0;
  return {s.volume() * mean, s.volume() * std::sqrt(variance / n_samples)};
}

}  // namespace hhcub
