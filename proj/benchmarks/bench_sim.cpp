#include <benchmark/benchmark.h>

#include "lsimamab/sim.hpp"

using namespace lsimamab;

namespace {

std::vector<double> ladder() { return {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0}; }

void BM_SimulateBalanced(benchmark::State& state) {
    RunConfig cfg;
    cfg.model = ArmModel::bernoulli_arms(ladder());
    cfg.sharing = make_balanced_instance(10, static_cast<int>(state.range(0)));
    cfg.horizon = 10000;
    cfg.seed = 42;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(simulate(cfg));
    }
}
BENCHMARK(BM_SimulateBalanced)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SimulateImbalanced(benchmark::State& state) {
    RunConfig cfg;
    cfg.model = ArmModel::bernoulli_arms(ladder());
    cfg.sharing = make_imbalanced_instance(10, static_cast<int>(state.range(0)));
    cfg.horizon = 10000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(simulate(cfg));
    }
}
BENCHMARK(BM_SimulateImbalanced)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_UcbBaseline(benchmark::State& state) {
    const ArmModel model = ArmModel::bernoulli_arms(ladder());
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(run_ucb_baseline(model, state.range(0), rng));
    }
}
BENCHMARK(BM_UcbBaseline)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Elimination(benchmark::State& state) {
    PublicBoard board(10, 100000);
    Rng rng(5);
    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 50; ++k) board.record_broadcast(i, rng.uniform01());
    for (auto _ : state) benchmark::DoNotOptimize(board.run_elimination());
}
BENCHMARK(BM_Elimination);

void BM_Decide(benchmark::State& state) {
    PublicBoard board(10, 100000);
    Rng rng(6);
    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 40 + i; ++k) board.record_broadcast(i, rng.uniform01());
    const AgentProfile profile{0, {2, 5}};
    for (auto _ : state)
        benchmark::DoNotOptimize(balanced_etc_decide(board, profile, 1.0));
}
BENCHMARK(BM_Decide);

}  // namespace

BENCHMARK_MAIN();
