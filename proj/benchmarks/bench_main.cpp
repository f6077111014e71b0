#include <benchmark/benchmark.h>

#include <cmath>

#include "photonstat/coherence.hpp"
#include "photonstat/optimizer.hpp"
#include "photonstat/states.hpp"
#include "photonstat/sweep.hpp"

using namespace photonstat;

static void BM_CoherenceGm(benchmark::State& state) {
    const auto n_cut = static_cast<std::size_t>(state.range(0));
    const auto dist = thermal_state(n_cut / 40.0, n_cut);
    for (auto _ : state) benchmark::DoNotOptimize(coherence_gm(dist, 3));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n_cut));
}
BENCHMARK(BM_CoherenceGm)->RangeMultiplier(4)->Range(64, 16384);

static void BM_SqueezedVacuum(benchmark::State& state) {
    const double r = static_cast<double>(state.range(0)) / 100.0;
    const double n_av = std::sinh(r) * std::sinh(r);
    const auto cut = auto_cutoff(n_av, [&](std::size_t c) { return squeezed_tail(r, c); });
    for (auto _ : state) benchmark::DoNotOptimize(squeezed_vacuum(r, 0.0, cut));
    state.counters["n_cut"] = static_cast<double>(cut);
}
BENCHMARK(BM_SqueezedVacuum)->Arg(50)->Arg(150)->Arg(265);

static void BM_CoinCoherentMixture(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(build_state({StateKind::coin_coherent_mixture, {{"n_av", 10.0}}, ""}, 500));
}
BENCHMARK(BM_CoinCoherentMixture);

static void BM_OptimizeExact(benchmark::State& state) {
    const auto n_max = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(optimize_gm_exact(3, n_max / 2.0 + 0.25, n_max));
    state.SetComplexityN(static_cast<int64_t>(n_max));
}
BENCHMARK(BM_OptimizeExact)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oNSquared);

static void BM_RandomSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(random_search_lower_bound(2, 7.5, 40, 1000, 1));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_RandomSearch);

static void BM_IntensitySweep(benchmark::State& state) {
    SweepConfig c;
    c.states = {{StateKind::coin_coherent_mixture, {}, ""}, {StateKind::coin, {}, ""},
                {StateKind::squeezed_vacuum, {}, ""},       {StateKind::thermal, {}, ""},
                {StateKind::coherent, {}, ""}};
    c.order = 2;
    c.n_max = 500;
    c.grid = {0.5, 50.0, 60, GridScale::log};
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c, 1));
}
BENCHMARK(BM_IntensitySweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
