#pragma once

// Test helpers: a seeded generator and small independent reference computations.

#include "expramsey/nat.hpp"
#include "expramsey/tower.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace testing {

using expramsey::Nat;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(0x5eed2024u);
    return engine;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi)
{
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline Nat nat(std::uint64_t v)
{
    return Nat(std::to_string(v));
}

/// b^e by repeated multiplication.
inline Nat naive_pow(const Nat& b, std::uint64_t e)
{
    Nat r = 1;
    for (std::uint64_t i = 0; i < e; ++i)
        r *= b;
    return r;
}

/// Random strictly increasing sequence of `len` terms from [lo, hi].
inline std::vector<Nat> random_increasing(std::uint64_t lo, std::uint64_t hi, std::size_t len)
{
    std::set<std::uint64_t> picked;
    while (picked.size() < len)
        picked.insert(uniform(lo, hi));
    std::vector<Nat> out;
    for (auto v : picked)
        out.push_back(nat(v));
    return out;
}

/// Exact integer values of a collection of canonical powers (all must be evaluable).
template <typename Range>
std::set<Nat> values_of(const Range& powers, std::size_t max_bits = 1u << 16)
{
    std::set<Nat> out;
    for (const auto& p : powers)
        out.insert(*expramsey::eval_capped(p, max_bits));
    return out;
}

} // namespace testing
