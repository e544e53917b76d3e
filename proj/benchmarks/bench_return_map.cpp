#include <benchmark/benchmark.h>

#include <random>

#include "cfl/iterated.hpp"
#include "cfl/numeric.hpp"
#include "cfl/polar.hpp"
#include "cfl/random.hpp"
#include "cfl/return_map.hpp"

using namespace cfl;

namespace {

CoeffSeq sample(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_coeff_seq(rng, RandomShape{});
}

void BM_ReturnCoeffsIterated(benchmark::State& state) {
    CoeffSeq a = sample(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_coeffs_iterated(a, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_ReturnCoeffsIterated)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ReturnCoeffsTransport(benchmark::State& state) {
    CoeffSeq a = sample(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_coeffs_transport(a, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_ReturnCoeffsTransport)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ReturnCoeffsFloat(benchmark::State& state) {
    CoeffSeqF a = sample(42).to_float();
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_coeffs_transport(a, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_ReturnCoeffsFloat)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_IteratedAllWords(benchmark::State& state) {
    CoeffSeq a = sample(7);
    const std::vector<Word> words = words_up_to_order(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        IteratedIntegrals engine(a);
        for (const Word& w : words) {
            benchmark::DoNotOptimize(engine.integral(w));
        }
    }
    state.counters["words"] = static_cast<double>(words.size());
}
BENCHMARK(BM_IteratedAllWords)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_NumericReturnMap(benchmark::State& state) {
    CoeffSeqF a = sample(42).to_float();
    const Complex r(numeric_radius(a) / 4, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_map_numeric(a, r));
    }
}
BENCHMARK(BM_NumericReturnMap)->Unit(benchmark::kMillisecond);

void BM_PolarReduce(benchmark::State& state) {
    PlanarField f;
    f.degree = 3;
    f.F = {{{3, 0}, 1}, {{1, 2}, 2}, {{2, 0}, 1}};
    f.G = {{{0, 3}, -1}, {{1, 1}, 3}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(polar_reduce(f, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_PolarReduce)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
