#include "expramsey/patterns.hpp"

#include <benchmark/benchmark.h>

using namespace expramsey;

static Sequence first_terms(std::size_t n)
{
    std::vector<Nat> terms;
    for (std::size_t i = 0; i < n; ++i)
        terms.emplace_back(static_cast<unsigned long>(i + 2));
    return Sequence::exponential(terms);
}

static void BM_FeSet(benchmark::State& state)
{
    const auto a = first_terms(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(fe_set(a));
}
BENCHMARK(BM_FeSet)->DenseRange(2, 5);

static void BM_FeBoundedConstant(benchmark::State& state)
{
    const auto a = first_terms(static_cast<std::size_t>(state.range(0)));
    const auto phi = PhiSpec::constant(2, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(fe_bounded_set(a, phi));
}
BENCHMARK(BM_FeBoundedConstant)->DenseRange(2, 6);

static void BM_ContainsBoundedTower(benchmark::State& state)
{
    const auto a = first_terms(5);
    const std::vector<std::size_t> idx{1, 2};
    const auto t = tower_build(a, 5, 4, idx);
    const auto phi = PhiSpec::tall_towers();
    for (auto _ : state)
        benchmark::DoNotOptimize(contains_bounded(t, a, phi));
}
BENCHMARK(BM_ContainsBoundedTower);
