#include <benchmark/benchmark.h>

#include <string>
#include <utility>
#include <vector>

#include "crossworld/math.hpp"
#include "crossworld/repair.hpp"

using namespace crossworld;

namespace {

std::vector<std::pair<std::string, double>> two_arm_rows(std::size_t per_arm, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(2 * per_arm);
    for (std::size_t i = 0; i < per_arm; ++i) rows.emplace_back("0", rng.normal());
    for (std::size_t i = 0; i < per_arm; ++i) rows.emplace_back("1", 1.0 + rng.normal());
    return rows;
}

void BM_FitRepair(benchmark::State& state) {
    const auto rows = two_arm_rows(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_repair(rows, RepairMode::empirical));
    }
}
BENCHMARK(BM_FitRepair)->Arg(1000)->Arg(100000);

void BM_RepairBatch(benchmark::State& state) {
    const auto train = two_arm_rows(static_cast<std::size_t>(state.range(0)), 12);
    const auto model = fit_repair(train, RepairMode::empirical);
    const auto rows = two_arm_rows(static_cast<std::size_t>(state.range(0)), 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(repair_batch(model, rows));
    }
}
BENCHMARK(BM_RepairBatch)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
