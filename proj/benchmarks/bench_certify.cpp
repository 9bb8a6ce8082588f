#include <benchmark/benchmark.h>

#include "k3gauss/certify.hpp"

using namespace k3gauss;

static void BM_certify_rank2(benchmark::State& state) {
    const auto lat = make_rank2_lattice();
    for (auto _ : state) {
        auto cert = certify(lat, DivisorClass({11, 1}));
        benchmark::DoNotOptimize(cert.status);
    }
}
BENCHMARK(BM_certify_rank2);

static void BM_certify_rank5_warm(benchmark::State& state) {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 3, 2, 2, 2});
    PositivityChecker checker(lat);
    CertifyEngine engine(checker);
    for (auto _ : state) {
        auto cert = engine.certify(DivisorClass({9, 6, 1, 0, 0}));
        benchmark::DoNotOptimize(cert.status);
    }
}
BENCHMARK(BM_certify_rank5_warm);

static void BM_decompose_scan(benchmark::State& state) {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 3, 2, 2, 2});
    PositivityChecker checker(lat);
    CertifyEngine engine(checker);
    for (auto _ : state) {
        for (int a = 9; a <= 11; ++a)
            for (int s = 0; s <= a - 2; ++s) {
                auto dec = engine.maybe_decompose(DivisorClass({a, s, 0, 0, 0}));
                benchmark::DoNotOptimize(dec.has_value());
            }
    }
}
BENCHMARK(BM_decompose_scan);
