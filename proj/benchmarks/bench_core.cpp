#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hhcub/adaptive.hpp"
#include "hhcub/bounds.hpp"
#include "hhcub/cubature.hpp"
#include "hhcub/field.hpp"
#include "hhcub/moments.hpp"
#include "hhcub/qform.hpp"

using namespace hhcub;

namespace {

ScalarField exp_sum() { return parse_expr("exp(x1+x2)", 2); }

QuadraticForm random_form(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
  return QuadraticForm(a);
}

}  // namespace

static void BM_ApplyHhMix(benchmark::State& state) {
  const CubatureRule rule = builtin_rule("hh-mix-2d", 2);
  const ScalarField f = exp_sum();
  const Simplex s = Simplex::unit(2);
  for (auto _ : state) benchmark::DoNotOptimize(apply(rule, f, s));
}
BENCHMARK(BM_ApplyHhMix);

static void BM_FiniteDifferenceHessian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ScalarField f = ScalarField::finite_difference(n, [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return std::exp(s);
  });
  const Point u(n, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(f.hessian_at(u.coords()));
}
BENCHMARK(BM_FiniteDifferenceHessian)->DenseRange(1, 4);

static void BM_OperatorNorm(benchmark::State& state) {
  const QuadraticForm q = random_form(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(q.operator_norm());
}
BENCHMARK(BM_OperatorNorm)->RangeMultiplier(2)->Range(2, 16);

static void BM_CentralSecondMoment(benchmark::State& state) {
  const Simplex s = Simplex::unit(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(central_second_moment(s));
}
BENCHMARK(BM_CentralSecondMoment)->DenseRange(1, 6);

static void BM_SupNormLattice(benchmark::State& state) {
  const ScalarField f = exp_sum();
  const Simplex s = Simplex::unit(2);
  for (auto _ : state) benchmark::DoNotOptimize(d2f_sup_norm(f, s, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_SupNormLattice)->Arg(4)->Arg(20);

static void BM_AdaptiveExpSum(benchmark::State& state) {
  const ScalarField f = exp_sum();
  AdaptiveConfig cfg;
  cfg.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
  cfg.threads = 1;
  std::size_t cells = 0;
  for (auto _ : state) {
    const AdaptiveResult r = integrate_adaptive(f, Simplex::unit(2), cfg);
    cells = r.result.cells;
    benchmark::DoNotOptimize(r.result.estimate);
  }
  state.counters["cells"] = static_cast<double>(cells);
}
BENCHMARK(BM_AdaptiveExpSum)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
