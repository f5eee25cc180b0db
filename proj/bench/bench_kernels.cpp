// Serial references against the OpenMP kernels. Thread count follows
// QUANTACURVE_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "quantacurve/closed_form.hpp"
#include "quantacurve/oracle.hpp"
#include "quantacurve/oracle_kernels.hpp"
#include "quantacurve/parallel.hpp"

using namespace quantacurve;
namespace orc = quantacurve::oracle;

static void BM_RegionDivideConquer(benchmark::State& state) {
    const orc::kernels::Region region{0.0, 1.0, false, false, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(orc::kernels::solve_region(region, 16));
    }
}
BENCHMARK(BM_RegionDivideConquer)->Arg(2000)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_RegionExhaustive(benchmark::State& state) {
    const orc::kernels::Region region{0.0, 1.0, false, false, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(orc::kernels::solve_region_reference(region, 16));
    }
}
BENCHMARK(BM_RegionExhaustive)->Arg(2000)->Arg(6000)->Unit(benchmark::kMillisecond);

template <orc::Exec E>
static void BM_Distortion(benchmark::State& state) {
    const PolygonSupport poly(12, 1.0);
    const Codebook cb = closed_form::polygon_conditional(poly, static_cast<int>(state.range(0))).codebook;
    for (auto _ : state) {
        benchmark::DoNotOptimize(orc::distortion(poly, cb, {}, E));
    }
}
BENCHMARK(BM_Distortion<orc::Exec::Serial>)->Arg(60)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Distortion<orc::Exec::Parallel>)->Arg(60)->Arg(600)->Unit(benchmark::kMillisecond);

template <orc::Exec E>
static void BM_MonteCarlo(benchmark::State& state) {
    const CircleSupport circle(1.0);
    const Codebook cb = closed_form::circle_conditional_constrained(circle, 32).codebook;
    for (auto _ : state) {
        benchmark::DoNotOptimize(orc::mc_distortion(circle, cb, state.range(0), 5, E));
    }
}
BENCHMARK(BM_MonteCarlo<orc::Exec::Serial>)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<orc::Exec::Parallel>)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_LloydRestarts(benchmark::State& state) {
    orc::OracleConfig cfg;
    cfg.restarts = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(orc::lloyd_unconstrained(CircleSupport(1.0), 8, cfg));
    }
}
BENCHMARK(BM_LloydRestarts)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    apply_thread_cap_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
        return 1;
    }
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
