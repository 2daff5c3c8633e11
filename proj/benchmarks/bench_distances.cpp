#include <benchmark/benchmark.h>

#include <vector>

#include "crossworld/experiments.hpp"
#include "crossworld/math.hpp"

using namespace crossworld;

namespace {

std::vector<double> gaussian_sample(std::size_t n, double shift, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> xs(n);
    for (auto& x : xs) x = shift + rng.normal();
    return xs;
}

void BM_KsDistance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = gaussian_sample(n, 0.0, 1);
    const auto b = gaussian_sample(n, 0.5, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ks_distance(a, b));
    }
}
BENCHMARK(BM_KsDistance)->Arg(1000)->Arg(100000);

void BM_Wasserstein(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = gaussian_sample(n, 0.0, 3);
    const auto b = gaussian_sample(n, 0.5, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wasserstein1(a, b));
    }
}
BENCHMARK(BM_Wasserstein)->Arg(1000)->Arg(100000);

void BM_Spearman(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = gaussian_sample(n, 0.0, 5);
    const auto b = gaussian_sample(n, 0.5, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spearman(a, b));
    }
}
BENCHMARK(BM_Spearman)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
