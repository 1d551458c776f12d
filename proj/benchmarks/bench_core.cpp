#include <benchmark/benchmark.h>

#include <finitekey/bounds.hpp>
#include <finitekey/entropy.hpp>
#include <finitekey/mc_validator.hpp>
#include <finitekey/optimizer.hpp>

namespace {

using namespace finitekey;

void BM_BinaryEntropy(benchmark::State& state) {
  double p = 0.013;
  for (auto _ : state) {
    benchmark::DoNotOptimize(binary_entropy(Probability{p}));
    p = p < 0.49 ? p + 1e-6 : 0.013;
  }
}
BENCHMARK(BM_BinaryEntropy);

void BM_Xi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(xi(1e6, 2, 1e-7));
}
BENCHMARK(BM_Xi);

void BM_Evaluate(benchmark::State& state) {
  OptimizationProblem problem{ProtocolKind::six_states, 1e8, Probability{0.025}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(problem, 0.7, 1e-6, 1e-8));
}
BENCHMARK(BM_Evaluate);

// full coarse grid plus refinement, one cell of a sweep
void BM_Optimize(benchmark::State& state) {
  auto kind = state.range(0) == 0 ? ProtocolKind::bb84 : ProtocolKind::six_states;
  OptimizationProblem problem{kind, 1e8, Probability{0.025}};
  for (auto _ : state) benchmark::DoNotOptimize(optimize(problem, {}));
}
BENCHMARK(BM_Optimize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ViolationRate(benchmark::State& state) {
  auto config = TrialConfig::binary(static_cast<std::uint64_t>(state.range(0)), 0.25, 0.1,
                                    1000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_violation_rate(config, 1));
  state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(BM_ViolationRate)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
