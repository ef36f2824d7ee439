#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "relaxlab/fft.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/model.hpp"
#include "relaxlab/profiles.hpp"
#include "relaxlab/solver.hpp"

using namespace relaxlab;

namespace {

void BM_FftRoundTrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Fft fft(n);
    std::vector<double> f(n), g(n);
    std::vector<cplx> spec(n / 2 + 1);
    for (int j = 0; j < n; ++j) f[j] = std::sin(0.01 * j) * std::exp(-1e-6 * j * j);
    for (auto _ : state) {
        fft.forward(f, spec);
        fft.inverse(spec, g);
        benchmark::DoNotOptimize(g.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_ApplyKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto grid = SpectralGrid::make(400.0, n);
    std::vector<double> phi(n);
    for (int j = 0; j < n; ++j) phi[j] = std::exp(-grid.x(j) * grid.x(j));
    for (auto _ : state) benchmark::DoNotOptimize(apply_G(grid, phi, 10.0, KernelKind::G, 0.3, 0.91));
}
BENCHMARK(BM_ApplyKernel)->RangeMultiplier(4)->Range(1 << 10, 1 << 15);

void BM_ZOnGrid(benchmark::State& state) {
    const ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 0.04, 0.0);
    const auto grid = SpectralGrid::make(400.0, 4096);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Z_on_grid(grid, t, ps, tail));
}
BENCHMARK(BM_ZOnGrid)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ZPointwise(benchmark::State& state) {
    const ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 0.04, 0.0);
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Z_eval(x, 50.0, ps, tail));
        x = x > 5.0 ? -5.0 : x + 0.37;
    }
}
BENCHMARK(BM_ZPointwise);

// Full damped-wave solve over a short horizon; range(0) is N.
void BM_DampedWave(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = ModelParams::make(0.0, 1.0, 0.0);
    const auto grid = GridSpec::make(200.0, n, 0.05, 5.0, {5.0});
    const auto data =
        make_calibrated_data(params, TailSpec::with_gamma(1.5, 0.04, 0.0), 0.1, 0.01, grid.space);
    for (auto _ : state) benchmark::DoNotOptimize(run_damped_wave(params, data, grid));
    state.SetItemsProcessed(state.iterations() * grid.steps());
}
BENCHMARK(BM_DampedWave)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_JinXin(benchmark::State& state) {
    const auto params = ModelParams::make(0.0, 1.0, 0.0);
    const auto grid = GridSpec::make(200.0, 2048, 0.05, 5.0, {5.0});
    const auto data =
        make_calibrated_data(params, TailSpec::with_gamma(1.5, 0.04, 0.0), 0.1, 0.01, grid.space);
    for (auto _ : state) benchmark::DoNotOptimize(run_jinxin(params, data, grid));
}
BENCHMARK(BM_JinXin)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
