#include <benchmark/benchmark.h>

#include "johncheck/checker.hpp"
#include "johncheck/types.hpp"

using namespace johncheck;

static void BM_DiagnosticSuiteBuiltin(benchmark::State& state) {
  RuleSpec spec;
  spec.value = BuiltinTwoGoodAssignment{};
  CheckConfig cfg;
  cfg.box_x = {{1.5, 3.0}, {0.0, 1.4}};
  cfg.box_y = {{0.0, 1.4}, {1.5, 3.0}};
  cfg.n_samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_diagnostic_suite(spec, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_samples);
}
BENCHMARK(BM_DiagnosticSuiteBuiltin)->RangeMultiplier(4)->Range(16, 256);

BENCHMARK_MAIN();
