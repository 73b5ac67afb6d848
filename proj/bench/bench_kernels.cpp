// Serial reference loop vs OpenMP blocks for the Monte Carlo kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "osmfso/montecarlo.hpp"

namespace {

using osmfso::Execution;

osmfso::SimConfig fig1_config(int n_rx) {
  osmfso::SimConfig c;
  c.m_tx = 2;
  c.n_rx = n_rx;
  for (int n = 0; n < n_rx; ++n) c.links.push_back({2.0, 2.0, 2.0, 3.141592653589793 / 3.0});
  for (int n = 0; n < n_rx; ++n) c.links.push_back({2.0, 2.0, 1.0, 3.141592653589793 / 4.0});
  c.snr_grid = osmfso::SnrGrid::from_db({10.0});
  c.max_symbols = 1 << 18;
  c.target_errors = 1 << 30;
  return c;
}

void BM_SimulateOsm(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  const auto cfg = fig1_config(2);
  for (auto _ : state) benchmark::DoNotOptimize(osmfso::simulate_osm(cfg, exec));
  state.SetItemsProcessed(state.iterations() * cfg.max_symbols);
  state.SetLabel(exec == Execution::serial ? "serial" : "openmp");
}
BENCHMARK(BM_SimulateOsm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SemiAnalyticMrc(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  osmfso::SimConfig cfg;
  cfg.scheme = osmfso::Scheme::mrc_dpsk;
  cfg.m_tx = 1;
  cfg.n_rx = 2;
  cfg.links = {{1.5, 1.5, 0.0, 0.0}, {1.5, 1.5, 0.0, 0.0}};
  cfg.snr_grid = osmfso::SnrGrid::from_db({10.0});
  cfg.max_symbols = 1 << 18;
  for (auto _ : state) benchmark::DoNotOptimize(osmfso::simulate_baseline(cfg, exec));
  state.SetItemsProcessed(state.iterations() * cfg.max_symbols);
  state.SetLabel(exec == Execution::serial ? "serial" : "openmp");
}
BENCHMARK(BM_SemiAnalyticMrc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MgfEstimate(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  const osmfso::HkParams l1{2.0, 2.0, 2.0, 1.0};
  const osmfso::HkParams l2{2.0, 2.0, 1.0, 0.5};
  const std::vector<double> s{0.1, 1.0, 10.0};
  for (auto _ : state) benchmark::DoNotOptimize(osmfso::estimate_mgf_delta(l1, l2, s, 1 << 18, 7, exec));
  state.SetItemsProcessed(state.iterations() * (1 << 18));
  state.SetLabel(exec == Execution::serial ? "serial" : "openmp");
}
BENCHMARK(BM_MgfEstimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
