#include "expramsey/tower.hpp"

#include <benchmark/benchmark.h>

using namespace expramsey;

static void BM_CanonicalOf(benchmark::State& state)
{
    Nat n;
    mpz_ui_pow_ui(n.get_mpz_t(), 6, static_cast<unsigned long>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(CanonicalPower::of(n));
}
BENCHMARK(BM_CanonicalOf)->Arg(8)->Arg(64)->Arg(512);

static void BM_CompareLogBounds(benchmark::State& state)
{
    const auto e = FactoredExponent::prime_power(2, Nat(static_cast<unsigned long>(state.range(0))));
    const auto p = canonicalize(3, e);
    auto q_exp = FactoredExponent::prime_power(2, Nat(static_cast<unsigned long>(state.range(0)) - 1));
    q_exp *= FactoredExponent::prime_power(3, 1);
    const auto q = canonicalize(2, q_exp);
    for (auto _ : state)
        benchmark::DoNotOptimize(compare(p, q));
}
BENCHMARK(BM_CompareLogBounds)->Arg(5000)->Arg(1 << 21);

static void BM_PowModLift(benchmark::State& state)
{
    Nat beta;
    mpz_ui_pow_ui(beta.get_mpz_t(), 2, 80);
    const auto e = FactoredExponent::prime_power(3, beta);
    const Nat m(static_cast<unsigned long>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pow_mod(7, e, m));
}
BENCHMARK(BM_PowModLift)->Arg(10)->Arg(1000003)->Arg(999999937);
