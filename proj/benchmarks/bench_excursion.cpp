#include <benchmark/benchmark.h>

#include "excursion/classifier.hpp"
#include "excursion/counting.hpp"
#include "excursion/systems/simulate.hpp"

using namespace excursion;

namespace {

Trajectory brownian(std::size_t n) {
    systems::SystemSpec spec;
    spec.kind = systems::SystemKind::Brownian;
    spec.R = 1.0;
    spec.dt = 1e-3;
    spec.T = 1e-3 * static_cast<double>(n - 1);
    spec.seed = 42;
    return systems::simulate(spec).trajectory;
}

}  // namespace

static void BM_CountExcursions(benchmark::State& state) {
    const Trajectory traj = brownian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_excursions(traj, 0.1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountExcursions)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();

static void BM_Classify(benchmark::State& state) {
    const Trajectory traj = brownian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(traj));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Classify)->Arg(10000)->Arg(100000);

static void BM_SimulateChen(benchmark::State& state) {
    systems::SystemSpec spec;
    spec.kind = systems::SystemKind::Chen;
    spec.dt = 1e-3;
    spec.T = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(systems::simulate(spec));
    }
}
BENCHMARK(BM_SimulateChen)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SimulateOU(benchmark::State& state) {
    systems::SystemSpec spec;
    spec.kind = systems::SystemKind::OU;
    spec.R = 1.0;
    spec.dt = 1e-3;
    spec.T = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(systems::simulate(spec));
    }
}
BENCHMARK(BM_SimulateOU)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
