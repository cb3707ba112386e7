#include <benchmark/benchmark.h>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/figures.hpp"
#include "thermoprobe/harness/sweep.hpp"
#include "thermoprobe/transport_kernel.hpp"

using namespace thermoprobe;

static void BM_AssembleOnsager4(benchmark::State& state) {
  const auto set = dot_ring_transmission_set(canonical_dot_ring(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_onsager4(set, 1.0, 0.0));
}
BENCHMARK(BM_AssembleOnsager4);

static void BM_PointPipeline(benchmark::State& state) {
  for (auto _ : state) {
    const auto full = assemble_onsager4(dot_ring_transmission_set(canonical_dot_ring(1.0)), 1.0, 0.0);
    const auto vp = reduce_voltage_probe(full);
    const auto c = transport_coefficients(vp.reduced, 1.0);
    benchmark::DoNotOptimize(merit_set(c, 0.5, 1.0, Regime::L, false));
  }
}
BENCHMARK(BM_PointPipeline);

static void BM_Figure(benchmark::State& state) {
  const auto id = static_cast<harness::FigureId>(state.range(0));
  harness::SweepConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_figure(id, c));
}
BENCHMARK(BM_Figure)
    ->Arg(static_cast<int>(harness::FigureId::Fig5))
    ->Arg(static_cast<int>(harness::FigureId::Fig6))
    ->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  harness::SweepConfig c;
  c.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_sweep(c));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
