// Serial vs OpenMP kernels. Run with --benchmark_filter to pick one.

#include <random>

#include <benchmark/benchmark.h>

#include "hrf/kernels.hpp"

using namespace hrf;

namespace {

std::vector<std::vector<double>> metrics(std::size_t count) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<std::vector<double>> xs(count, std::vector<double>(3));
    for (auto& x : xs)
        for (auto& v : x) v = u(rng);
    return xs;
}

kernels::GridSpec grid(int nodes) {
    kernels::GridSpec g;
    g.alpha_min = 0.01;
    g.alpha_max = 4;
    g.beta_min = 0;
    g.beta_max = 3;
    g.alpha_nodes = g.beta_nodes = nodes;
    return g;
}

void BM_GapSerial(benchmark::State& st) {
    SamplerSpec spec;
    for (auto _ : st) benchmark::DoNotOptimize(kernels::gap_samples_serial(static_cast<int>(st.range(0)), 200, spec));
}
void BM_GapParallel(benchmark::State& st) {
    SamplerSpec spec;
    for (auto _ : st) benchmark::DoNotOptimize(kernels::gap_samples_parallel(static_cast<int>(st.range(0)), 200, spec));
}

void BM_RicciSerial(benchmark::State& st) {
    const auto space = preset_suN_example(5);
    const auto xs = metrics(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::ricci_batch_serial(space, xs));
}
void BM_RicciParallel(benchmark::State& st) {
    const auto space = preset_suN_example(5);
    const auto xs = metrics(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::ricci_batch_parallel(space, xs));
}

void BM_GridSerial(benchmark::State& st) {
    const auto g = grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::suN_grid_serial(4, g));
}
void BM_GridParallel(benchmark::State& st) {
    const auto g = grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::suN_grid_parallel(4, g));
}

}  // namespace

BENCHMARK(BM_GapSerial)->Arg(4)->Arg(8);
BENCHMARK(BM_GapParallel)->Arg(4)->Arg(8);
BENCHMARK(BM_RicciSerial)->Arg(10000);
BENCHMARK(BM_RicciParallel)->Arg(10000);
BENCHMARK(BM_GridSerial)->Arg(101)->Arg(401);
BENCHMARK(BM_GridParallel)->Arg(101)->Arg(401);

BENCHMARK_MAIN();
