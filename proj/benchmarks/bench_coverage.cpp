#include <benchmark/benchmark.h>

#include "k3gauss/coverage.hpp"

using namespace k3gauss;

static void BM_closed_forms(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = closed_form_coverage(621, 2000);
        benchmark::DoNotOptimize(rep.missing.size());
    }
}
BENCHMARK(BM_closed_forms);

static void BM_rank5_window(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = rank5_family_coverage(281, 281 + state.range(0), {}, 1);
        benchmark::DoNotOptimize(rep.missing.size());
    }
}
BENCHMARK(BM_rank5_window)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_product_window(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = product_family_coverage(153, 280, {}, 1);
        benchmark::DoNotOptimize(rep.missing.size());
    }
}
BENCHMARK(BM_product_window)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
