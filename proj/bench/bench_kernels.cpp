// Serial versus OpenMP timings of the parallel kernels.

#include <benchmark/benchmark.h>

#include "sgrid/attacker.hpp"
#include "sgrid/harness.hpp"
#include "sgrid/oracle.hpp"

using namespace sgrid;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

Instance random_instance(std::size_t n, double allowance, std::uint64_t seed) {
    return generate_instance({n, 2.0, allowance, 1.0, 5.0, seed});
}

void BM_BruteForcePmax(benchmark::State& state) {
    const Instance inst = random_instance(7, 4.0, 3);
    const CostModel cost(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_pmax(inst, cost, exec_of(state)));
}

void BM_BruteForceMaxmin(benchmark::State& state) {
    const Instance inst = random_instance(10, 3.0, 4);
    const CostModel cost(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_maxmin(inst, 0.3, cost, exec_of(state)));
}

void BM_FullAttackDp(benchmark::State& state) {
    const Instance inst = random_instance(200, 20.0, 5);
    const CostModel cost(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(full_attack_dp(inst, cost, exec_of(state)).cost);
}

void BM_LimitedDpCurve(benchmark::State& state) {
    const Instance inst = random_instance(40, 20.0, 6);
    const CostModel cost(2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(limited_attack_dp_curve(inst, static_cast<int>(inst.size()), cost, exec_of(state)));
}

void BM_Fig3(benchmark::State& state) {
    ExperimentConfig c = ExperimentConfig::defaults(Experiment::Fig3Costs);
    c.trials = 4;
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, exec_of(state)).rows.size());
}

}  // namespace

BENCHMARK(BM_BruteForcePmax)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceMaxmin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullAttackDp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LimitedDpCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fig3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
