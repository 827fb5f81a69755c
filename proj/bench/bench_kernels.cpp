// Serial reference implementations vs the OpenMP kernels.
//
//   cmake --build build --target bench_kernels && ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include "wavecraft/metrics.hpp"
#include "wavecraft/operators.hpp"
#include "wavecraft/states.hpp"
#include "wavecraft/teleport.hpp"

using namespace wavecraft;

namespace {

WaveFunction bench_state(const QuadratureGrid& grid) {
    return fock_superposition(grid, {0.7, -0.3, 0.5, 0.0, 0.4});
}

TeleportConfig bench_config() {
    TeleportConfig cfg;
    cfg.r_tele = 1.0;
    cfg.subtraction = {1, 0};
    return cfg;
}

void BM_ConditionalReference(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ref::conditional_wave(grid, 1.0, psi, BellOutcome{0.7, -0.4}));
    }
}
BENCHMARK(BM_ConditionalReference)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ConditionalFactored(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const TeleportEngine eng(grid, bench_config());
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.conditional(psi, BellOutcome{0.7, -0.4}));
    }
}
BENCHMARK(BM_ConditionalFactored)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_TeleportStepSerial(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const TeleportEngine eng(grid, bench_config());
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(teleport_step_serial(eng, psi, BellOutcome{0.7, -0.4}));
    }
}
BENCHMARK(BM_TeleportStepSerial)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_TeleportStepParallel(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const TeleportEngine eng(grid, bench_config());
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.step(psi, BellOutcome{0.7, -0.4}));
    }
}
BENCHMARK(BM_TeleportStepParallel)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_FourierRotateSerial(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::fourier_rotate(psi));
    }
}
BENCHMARK(BM_FourierRotateSerial)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_FourierRotateParallel(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 12.0);
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_rotate(psi));
    }
}
BENCHMARK(BM_FourierRotateParallel)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_WignerReference(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 10.0);
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::wigner(psi, 8.0, 129));
    }
}
BENCHMARK(BM_WignerReference)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_WignerParallel(benchmark::State& state) {
    const QuadratureGrid grid(static_cast<int>(state.range(0)), 10.0);
    const WaveFunction psi = bench_state(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wigner(psi, 8.0, 129));
    }
}
BENCHMARK(BM_WignerParallel)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_DensityGrid(benchmark::State& state) {
    const QuadratureGrid grid(512, 12.0);
    const TeleportEngine eng(grid, bench_config());
    const WaveFunction psi = squeezed_vacuum(grid, {0.5});
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.density_grid(psi, SweepRegion{6.0, 6.0}, res));
    }
}
BENCHMARK(BM_DensityGrid)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
