#include <benchmark/benchmark.h>

#include <random>

#include "johncheck/envelope.hpp"
#include "johncheck/types.hpp"

using namespace johncheck;

namespace {

Menu random_menu(int n_outcomes, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> cost(0.0, 1.0);
  Menu menu;
  menu.outcomes.reserve(n_outcomes);
  for (int k = 0; k < n_outcomes; ++k) {
    Outcome o;
    o.z.resize(d);
    for (double& v : o.z) v = unit(rng);
    o.cost = cost(rng);
    menu.outcomes.push_back(std::move(o));
  }
  return menu;
}

TypeProfile random_profile(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TypeProfile p;
  p.x.resize(d);
  p.y.resize(d);
  for (double& v : p.x) v = unit(rng);
  for (double& v : p.y) v = unit(rng);
  return p;
}

}  // namespace

static void BM_UpperEnvelope(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  const Menu menu = random_menu(n, 4, rng);
  const TypeProfile p = random_profile(4, rng);
  const std::vector<Line> lines = line_parameters(menu, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_envelope(lines));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_UpperEnvelope)->RangeMultiplier(8)->Range(8, 4096);

static void BM_UniformMixtureIntegral(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  const Menu menu = random_menu(n, 4, rng);
  const TypeProfile p = random_profile(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_uniform_mixture(menu, p));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_UniformMixtureIntegral)->RangeMultiplier(8)->Range(8, 4096);
