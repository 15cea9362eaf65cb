#pragma once

#include <cstddef>
#include <cstdint>

namespace expramsey {

/// Resource caps shared by every module. All caps are at least 1.
struct Limits {
    /// Largest bit length of an integer that is ever materialized as a pattern value.
    std::size_t value_bit_cap = 4096;
    /// Exponents up to this many bits are handled directly (square-and-multiply,
    /// single-level log bounds); larger ones go through Euler lifting and
    /// log-of-log bounds.
    std::size_t exponent_direct_bit_cap = std::size_t{1} << 20;
    /// Largest bit length of an exponent multiplicity or a lambda bound.
    std::size_t lambda_multiplicity_bit_cap = std::size_t{1} << 20;
    /// Largest number of instances/boxes/colorings any enumeration may visit.
    std::uint64_t enumeration_budget = 10'000'000;
    /// Trial division bound used when factoring.
    std::uint64_t factorization_trial_bound = 1'000'000;

    void validate() const;
};

inline const Limits& default_limits()
{
    static const Limits limits{};
    return limits;
}

} // namespace expramsey
