#pragma once

#include "expramsey/limits.hpp"
#include "expramsey/nat.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace expramsey {

/// An exponent E = prod p^beta_p held as prime -> multiplicity. The empty map
/// is the exponent 1. Every key is prime and every multiplicity is at least 1,
/// so the representation of a given integer is unique.
class FactoredExponent {
public:
    using Map = std::map<Nat, Nat>;

    FactoredExponent() = default;

    /// Factors n >= 1.
    static FactoredExponent of(const Nat& n, const Limits& limits = default_limits());
    static FactoredExponent prime_power(Nat prime, Nat multiplicity);
    static FactoredExponent from_factorization(const Factorization& factors);

    const Map& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    FactoredExponent& operator*=(const FactoredExponent& other);
    friend FactoredExponent operator*(FactoredExponent lhs, const FactoredExponent& rhs)
    {
        lhs *= rhs;
        return lhs;
    }

    /// E^k. k = 0 yields the exponent 1.
    FactoredExponent pow(const Nat& k) const;

    /// Exact value when its bit length is at most max_bits. The size test never
    /// materializes anything larger than about 2 * max_bits bits.
    std::optional<Nat> value(std::size_t max_bits) const;

    /// E mod m for m >= 1, by reducing each prime power modularly.
    Nat mod(const Nat& m) const;

    /// Throws CapExceeded if any multiplicity is wider than limits.lambda_multiplicity_bit_cap.
    void check_multiplicity_cap(const Limits& limits) const;

    /// Human-readable "2^3*5", or "1".
    std::string to_string() const;

    friend bool operator==(const FactoredExponent&, const FactoredExponent&) = default;
    friend bool structural_less(const FactoredExponent& a, const FactoredExponent& b);

private:
    Map factors_;
};

/// The integer root^E with root primitive (not c^k for k >= 2), or the literal 1.
/// Two CanonicalPowers denote the same integer iff they are componentwise equal.
class CanonicalPower {
public:
    /// The literal 1.
    CanonicalPower() : root_(1) {}

    /// Canonical form of n >= 1.
    static CanonicalPower of(const Nat& n, const Limits& limits = default_limits());

    const Nat& root() const noexcept { return root_; }
    const FactoredExponent& exponent() const noexcept { return exponent_; }
    bool is_one() const noexcept { return root_ == 1; }

    std::string to_string() const;

    friend bool operator==(const CanonicalPower&, const CanonicalPower&) = default;
    friend CanonicalPower canonicalize(const Nat& base, FactoredExponent exponent,
        const Limits& limits);

private:
    CanonicalPower(Nat root, FactoredExponent exponent)
        : root_(std::move(root)), exponent_(std::move(exponent)) {}

    Nat root_;
    FactoredExponent exponent_;
};

/// Arbitrary but fixed total order on representations; used for map keys only.
/// Numeric order is cmp().
struct StructuralLess {
    bool operator()(const CanonicalPower& a, const CanonicalPower& b) const;
};

/// n = c^k with k maximal, for n >= 2.
std::pair<Nat, Nat> perfect_power_root(const Nat& n);

/// (c, k * exponent) where base = c^k; base >= 2. Throws CapExceeded when a
/// multiplicity outgrows the multiplicity cap.
CanonicalPower canonicalize(const Nat& base, FactoredExponent exponent,
    const Limits& limits = default_limits());

/// The exact integer when its bit length is at most max_bits, else nullopt.
std::optional<Nat> eval_capped(const CanonicalPower& p, std::size_t max_bits);

/// Which mechanism settled a comparison.
enum class CmpPath {
    Structural, ///< componentwise equality or the literal 1
    Exact,      ///< both sides evaluated under the value cap
    LogBounds,  ///< certified interval bounds on the logarithms
};

struct Comparison {
    std::strong_ordering order;
    CmpPath path;
};

/// Numeric comparison of two canonical powers.
Comparison compare(const CanonicalPower& p, const CanonicalPower& q,
    const Limits& limits = default_limits());

inline std::strong_ordering cmp(const CanonicalPower& p, const CanonicalPower& q,
    const Limits& limits = default_limits())
{
    return compare(p, q, limits).order;
}

/// Compares the products of two finite lists of canonical powers. Factors
/// that appear on both sides cancel first. What remains cannot be decided
/// structurally, so if both sides are numerically equal and too large to
/// evaluate the refinement gives up with CapExceeded.
Comparison compare_products(std::span<const CanonicalPower> lhs,
    std::span<const CanonicalPower> rhs, const Limits& limits = default_limits());

/// Carmichael's lambda(m), the exponent of (Z/mZ)^*.
Nat carmichael(const Nat& m, const Limits& limits = default_limits());

enum class PowModRoute {
    Auto,        ///< direct when E fits exponent_direct_bit_cap, else lifting
    ForceLift,   ///< always take the Euler-lifting route (when E is large enough)
};

/// base^E mod m for m >= 1.
Nat pow_mod(const Nat& base, const FactoredExponent& exponent, const Nat& m,
    const Limits& limits = default_limits(), PowModRoute route = PowModRoute::Auto);

/// {"root": "...", "exp": {"p": "beta", ...}, "decimal": "..."}; decimal only
/// when the value fits limits.value_bit_cap.
nlohmann::ordered_json to_json(const CanonicalPower& p, const Limits& limits = default_limits());

/// Inverse of to_json; the "decimal" member, if present, is checked against the value.
CanonicalPower canonical_power_from_json(const nlohmann::json& j,
    const Limits& limits = default_limits());

} // namespace expramsey
