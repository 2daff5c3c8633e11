#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "crossworld/admg.hpp"
#include "crossworld/math.hpp"

using namespace crossworld;

namespace {

Admg random_graph(std::size_t n, double edge_prob, double bi_prob, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> directed, bidirected;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform01() < edge_prob) directed.emplace_back(names[i], names[j]);
            if (rng.uniform01() < bi_prob) bidirected.emplace_back(names[i], names[j]);
        }
    }
    return Admg(names, directed, bidirected);
}

void BM_DSeparationQuery(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = random_graph(n, 4.0 / static_cast<double>(n), 1.0 / static_cast<double>(n), 7);
    const auto& names = g.nodes();
    std::set<std::string> conditioning{names[2], names[3]};
    for (auto _ : state) {
        benchmark::DoNotOptimize(d_separated(g, names.front(), names.back(), conditioning));
    }
}
BENCHMARK(BM_DSeparationQuery)->Arg(8)->Arg(32)->Arg(128);

void BM_GraphConstruction(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            random_graph(n, 4.0 / static_cast<double>(n), 1.0 / static_cast<double>(n), 7));
    }
}
BENCHMARK(BM_GraphConstruction)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
