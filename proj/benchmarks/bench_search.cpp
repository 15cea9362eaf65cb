#include "expramsey/search.hpp"

#include <benchmark/benchmark.h>

using namespace expramsey;

static void BM_SchurBacktracking(benchmark::State& state)
{
    const InstanceFamily fam{AdditiveSchur{}, static_cast<std::uint64_t>(state.range(0))};
    const SearchOptions options{Engine::Backtracking, static_cast<unsigned>(state.range(1))};
    for (auto _ : state)
        benchmark::DoNotOptimize(avoidance_search(fam, 3, options));
}
BENCHMARK(BM_SchurBacktracking)->Args({13, 1})->Args({14, 1})->Args({14, 4})->Unit(benchmark::kMillisecond);

static void BM_SchurExhaustive(benchmark::State& state)
{
    const InstanceFamily fam{AdditiveSchur{}, static_cast<std::uint64_t>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(avoidance_search(fam, 2, {Engine::Exhaustive, 1}));
}
BENCHMARK(BM_SchurExhaustive)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_WitnessMod3(benchmark::State& state)
{
    const auto c = Coloring::residue_mod(3);
    const auto phi = PhiSpec::towers();
    for (auto _ : state)
        benchmark::DoNotOptimize(witness_search(c, 200, phi, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_WitnessMod3)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
