#include "fogalloc/allocators.hpp"
#include "fogalloc/assignment.hpp"
#include "fogalloc/freq_opt.hpp"
#include "fogalloc/generator.hpp"
#include "fogalloc/scenario.hpp"
#include "fogalloc/simulation.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fogalloc;

namespace {

const std::vector<double> kRecalibrated{-47.152, 88.594, -34.256, 5.222};

Matrix random_matrix(std::size_t rows, std::size_t cols) {
    std::mt19937_64 gen(rows * 131 + cols);
    std::uniform_real_distribution<double> u(0, 1);
    Matrix m(rows, cols);
    for (double& v : m.data) v = u(gen);
    return m;
}

ScenarioConfig recalibrated() {
    auto c = reference_scenario();
    for (auto& n : c.fleet.fog) n.power_coeffs = kRecalibrated;
    return c;
}

}  // namespace

// Batch of |R| requests against 10 fog nodes and one replicated cloud.
static void BM_Hungarian(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const Matrix m = random_matrix(rows, 10 + rows);
    for (auto _ : state) benchmark::DoNotOptimize(hungarian(m));
}
BENCHMARK(BM_Hungarian)->Arg(5)->Arg(10)->Arg(20)->Arg(50);

static void BM_ScaShape(benchmark::State& state) {
    ScaParams p;
    p.start = static_cast<StartPolicy>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(minimize_energy_shape(kRecalibrated, 1.6, 4.2, p));
}
BENCHMARK(BM_ScaShape)->Arg(0)->Arg(1)->Arg(2);

static void BM_AnalyticShape(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic_optimum_q3(kRecalibrated, 1.6, 4.2));
}
BENCHMARK(BM_AnalyticShape);

static void BM_AllocateInstance(benchmark::State& state) {
    const auto kind = static_cast<AllocatorKind>(state.range(0));
    const auto config = recalibrated();
    RequestGenerator gen(config.traffic, config.fleet.fog.size(), 1);
    std::vector<Instance> batches;
    for (int i = 0; i < 64; ++i) batches.push_back(gen.next());
    RandomStreams rng(1);
    const ScheduleState idle(config.fleet.fog.size());
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& inst = batches[k++ % batches.size()];
        benchmark::DoNotOptimize(allocate(kind, inst.requests, config.fleet, idle, 0.0, rng, config.frequency));
    }
    state.SetLabel(std::string(allocator_name(kind)));
}
BENCHMARK(BM_AllocateInstance)->DenseRange(0, 4);

static void BM_FullRun(benchmark::State& state) {
    auto config = recalibrated();
    config.allocator = static_cast<AllocatorKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run(config).metrics.accepted);
    state.SetLabel(std::string(allocator_name(config.allocator)));
}
BENCHMARK(BM_FullRun)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
