#include <benchmark/benchmark.h>

#include <random>

#include "johncheck/calculus.hpp"
#include "johncheck/rules.hpp"
#include "johncheck/types.hpp"

using namespace johncheck;

static void BM_JacobiEigenvalues(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SquareMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = unit(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_eigenvalues(m));
  }
}
BENCHMARK(BM_JacobiEigenvalues)->RangeMultiplier(2)->Range(2, 32);

static void BM_JacobianBuiltin(benchmark::State& state) {
  const RuleFn rule = [](const TypeProfile& p) { return two_good_allocation(p); };
  const TypeProfile p{{2.0, 1.0}, {0.0, 3.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobian_wrt_x(rule, p));
  }
}
BENCHMARK(BM_JacobianBuiltin);

static void BM_CrossPartialsBuiltin(benchmark::State& state) {
  const PotentialFn v1 = [](const TypeProfile& p) {
    return two_good_potential_1(p);
  };
  const TypeProfile p{{2.0, 1.0}, {0.0, 3.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_partial_matrix(v1, p));
  }
}
BENCHMARK(BM_CrossPartialsBuiltin);

static void BM_SegmentIntegral(benchmark::State& state) {
  const int panels = static_cast<int>(state.range(0));
  const RuleFn rule = [](const TypeProfile& p) { return two_good_allocation(p); };
  const TypeProfile from{{1.0, 1.0}, {0.0, 3.0}};
  const TypeProfile to{{2.0, 1.0}, {0.0, 3.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        segment_line_integral(rule, from, to, Block::x, panels));
  }
}
BENCHMARK(BM_SegmentIntegral)->RangeMultiplier(4)->Range(4, 256);
