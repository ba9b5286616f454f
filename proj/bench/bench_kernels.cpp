// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "ofa/distribution.hpp"
#include "ofa/simulate.hpp"
#include "ofa/sweep.hpp"

namespace {

const ofa::UniformDistribution kUniform(0.0, 1.0);
const ofa::BetaDistribution kBeta(2.0, 5.0);

void BM_SimulateParallel(benchmark::State& state) {
  const ofa::AuctionParams params{.strike = 0.5, .alpha = 0.25};
  const ofa::SimConfig cfg{static_cast<std::uint64_t>(state.range(0)), 42, 2.0 / 9.0};
  for (auto _ : state) benchmark::DoNotOptimize(ofa::simulate_auction(kUniform, params, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateParallel)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SimulateSerial(benchmark::State& state) {
  const ofa::AuctionParams params{.strike = 0.5, .alpha = 0.25};
  const ofa::SimConfig cfg{static_cast<std::uint64_t>(state.range(0)), 42, 2.0 / 9.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ofa::simulate_auction_serial(kUniform, params, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSerial)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SimulateBetaParallel(benchmark::State& state) {
  const ofa::AuctionParams params{.strike = 0.5, .alpha = 0.5};
  const ofa::SimConfig cfg{static_cast<std::uint64_t>(state.range(0)), 42, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(ofa::simulate_auction(kBeta, params, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBetaParallel)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_SimulateBetaSerial(benchmark::State& state) {
  const ofa::AuctionParams params{.strike = 0.5, .alpha = 0.5};
  const ofa::SimConfig cfg{static_cast<std::uint64_t>(state.range(0)), 42, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ofa::simulate_auction_serial(kBeta, params, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBetaSerial)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const auto grid = ofa::alpha_grid(0.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ofa::sweep_alpha(kBeta, {.strike = 0.5}, grid));
  }
}
BENCHMARK(BM_SweepParallel)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  const auto grid = ofa::alpha_grid(0.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ofa::sweep_alpha_serial(kBeta, {.strike = 0.5}, grid));
  }
}
BENCHMARK(BM_SweepSerial)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
