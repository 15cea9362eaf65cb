#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace expramsey {

/// Arbitrary-precision nonnegative integer.
using Nat = mpz_class;

/// Prime factorization as (prime, multiplicity) pairs in increasing prime order.
using Factorization = std::vector<std::pair<Nat, Nat>>;

/// Number of bits in the binary form of n; 0 for n = 0.
std::size_t bit_length(const Nat& n);

/// Parses a nonnegative decimal integer. Throws InvalidArgument on anything else.
Nat parse_nat(std::string_view text);

std::string to_decimal(const Nat& n);

/// Exact power. Throws CapExceeded when the exponent does not fit a machine word.
Nat pow(const Nat& base, const Nat& exponent);

/// Exact k-th root when n is a perfect k-th power.
std::optional<Nat> exact_root(const Nat& n, unsigned long k);

/// Trial-division factorization of n >= 1, trying divisors up to trial_bound.
/// Throws FactorizationBudgetExceeded if a cofactor remains that cannot be
/// certified prime within the bound.
Factorization factorize(const Nat& n, std::uint64_t trial_bound);

/// Converts a Nat known to be small into an unsigned long; throws CapExceeded otherwise.
unsigned long to_ulong(const Nat& n, const char* what);

} // namespace expramsey
