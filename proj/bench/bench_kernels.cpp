// Serial reference vs OpenMP kernels on the two sweep workloads: a Melnikov
// amplitude scan and a batch of DDE integrations.

#include <benchmark/benchmark.h>

#include <vector>

#include "ddelc/batch.hpp"
#include "ddelc/dde.hpp"

namespace {

std::vector<double> scan_grid(std::size_t n) {
  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    grid.push_back(5.0 + 55.0 * static_cast<double>(i) / static_cast<double>(n - 1));
  return grid;
}

std::vector<ddelc::dde::SimConfig> sim_batch(std::size_t n) {
  std::vector<ddelc::dde::SimConfig> cfgs(n);
  for (std::size_t i = 0; i < n; ++i) {
    cfgs[i].delay = 0.4;
    cfgs[i].damping = 0.1 + 0.02 * static_cast<double>(i);
    cfgs[i].x0 = 1.0;
    cfgs[i].dt = 0.005;
    cfgs[i].t_end = 200.0;
  }
  return cfgs;
}

void BM_MelnikovScan_Serial(benchmark::State& state) {
  const auto grid = scan_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = ddelc::batch::melnikov_values_serial(0.2, grid);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MelnikovScan_OpenMP(benchmark::State& state) {
  const auto grid = scan_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = ddelc::batch::melnikov_values(0.2, grid);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimBatch_Serial(benchmark::State& state) {
  const auto cfgs = sim_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = ddelc::batch::measure_many_serial(cfgs, 0.5);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimBatch_OpenMP(benchmark::State& state) {
  const auto cfgs = sim_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = ddelc::batch::measure_many(cfgs, 0.5);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MelnikovScan_Serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MelnikovScan_OpenMP)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimBatch_Serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimBatch_OpenMP)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
