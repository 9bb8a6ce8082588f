#include <benchmark/benchmark.h>

#include "k3gauss/enumerate.hpp"

using namespace k3gauss;

static void BM_slice_rank5_ample(benchmark::State& state) {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    SliceEnumerator en(lat, lat.basis_class(0));
    for (auto _ : state) {
        auto res = en.solve(0, -2);
        benchmark::DoNotOptimize(res.solutions.data());
    }
}
BENCHMARK(BM_slice_rank5_ample);

static void BM_slice_rank5_degree(benchmark::State& state) {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{9, 8, 2, 2, 2});
    SliceEnumerator en(lat, lat.basis_class(0));
    const long x = state.range(0);  // degree F.D = 2h*x on this lattice
    for (auto _ : state) {
        auto res = en.solve(18 * x, -2);
        benchmark::DoNotOptimize(res.solutions.data());
    }
}
BENCHMARK(BM_slice_rank5_degree)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_degree_bound(benchmark::State& state) {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{9, 8, 2, 2, 2});
    const DivisorClass D = lat.basis_class(0);
    const DivisorClass N = D + lat.basis_class(1);
    for (auto _ : state) {
        auto b = derive_degree_bound(lat, D, N, -2, 0);
        benchmark::DoNotOptimize(b.certified);
    }
}
BENCHMARK(BM_degree_bound);
