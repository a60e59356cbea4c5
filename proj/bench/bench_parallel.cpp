// Serial reference vs OpenMP kernels. Thread count comes from OMP_NUM_THREADS.

#include "pilotopt/montecarlo.hpp"
#include "pilotopt/optimizer.hpp"
#include "pilotopt/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace pilotopt;

namespace {

const LinkConfig kCfg{30, 31.623, 1e-9, FadingModel::block()};

void BM_GridSearchSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::grid_search_alpha(kCfg, Objective::FiniteBlocklength, static_cast<int>(state.range(0))));
    }
}

void BM_GridSearchParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(grid_search_alpha(kCfg, Objective::FiniteBlocklength, static_cast<int>(state.range(0))));
    }
}

void BM_SweepSerial(benchmark::State& state) {
    const SweepSpec spec = find_figure("fig2")->spec;
    for (auto _ : state) benchmark::DoNotOptimize(serial::run_sweep(spec));
}

void BM_SweepParallel(benchmark::State& state) {
    const SweepSpec spec = find_figure("fig2")->spec;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

void BM_MmseSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(serial::simulate_mmse_mse(4.0 / 32.0, 32, 10.0, state.range(0), 42));
}

void BM_MmseParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(simulate_mmse_mse(4.0 / 32.0, 32, 10.0, state.range(0), 42));
}

void BM_MomentsSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(serial::mc_capacity_moments(10.0, state.range(0), 42));
}

void BM_MomentsParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mc_capacity_moments(10.0, state.range(0), 42));
}

}  // namespace

BENCHMARK(BM_GridSearchSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MmseSerial)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MmseParallel)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsSerial)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsParallel)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
