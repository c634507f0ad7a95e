#include "sharpkit/presets.hpp"
#include "sharpkit/scoring.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace sharpkit;

namespace {

// Smooth random texture so the foreground mask and retention are realistic.
GrayImage texture(int n)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double fx = 0.05 + 0.1 * u(rng), fy = 0.05 + 0.1 * u(rng);
    std::vector<double> px(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            px[static_cast<std::size_t>(y) * n + x] =
                std::clamp(0.5 + 0.25 * std::sin(fx * x) * std::cos(fy * y) + 0.2 * (u(rng) - 0.5), 0.0, 1.0);
    return GrayImage(n, n, std::move(px));
}

const FirKernel& natural_kernel()
{
    static const FirKernel k = synthesize(find_preset("natural-1")->kernels[0].spec);
    return k;
}

void BM_ScoreSingle(benchmark::State& state)
{
    const auto img = texture(static_cast<int>(state.range(0)));
    const auto& k = natural_kernel();
    for (auto _ : state)
        benchmark::DoNotOptimize(score_single(img, k, 12));
    state.SetComplexityN(state.range(0) * state.range(0));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ScoreSingle)->RangeMultiplier(2)->Range(64, 2048)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_Decompose(benchmark::State& state)
{
    const auto img = texture(static_cast<int>(state.range(0)));
    const auto& k = natural_kernel();
    for (auto _ : state)
        benchmark::DoNotOptimize(decompose(img, k));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state)
{
    const auto spec = find_preset("natural-1")->kernels[0].spec;
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize(spec));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
