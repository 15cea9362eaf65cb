#pragma once

#include "expramsey/limits.hpp"
#include "expramsey/nat.hpp"
#include "expramsey/tower.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace expramsey {

/// A finite strictly increasing sequence of naturals.
///
/// Exponential-side sequences (the bases of every power pattern) need terms
/// >= 2; the additive side (the family a_k * 2^(sum lambda_i a_i)) allows 1.
class Sequence {
public:
    static Sequence exponential(std::vector<Nat> terms);
    static Sequence additive(std::vector<Nat> terms);

    const std::vector<Nat>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    /// 1-based access, matching a_1, ..., a_n.
    const Nat& at(std::size_t index) const;

    Sequence prefix(std::size_t length) const;
    /// Terms at the given 1-based increasing positions.
    Sequence subsequence(std::span<const std::size_t> positions) const;

    std::string to_string() const;

private:
    explicit Sequence(std::vector<Nat> terms) : terms_(std::move(terms)) {}
    std::vector<Nat> terms_;
};

/// A lambda bound f_t(x): either a plain integer or a canonical power too
/// large to materialize (the tower bounds).
class Bound {
public:
    Bound(Nat value) : value_(std::move(value)) {}
    Bound(CanonicalPower value) : value_(std::move(value)) {}

    /// Exact integer value if its bit length is at most max_bits.
    std::optional<Nat> as_nat(std::size_t max_bits) const;
    /// lambda <= bound, decided exactly (symbolically when needed).
    bool admits(const Nat& lambda, const Limits& limits) const;
    /// The bound as a canonical power; throws InvalidArgument for 0.
    CanonicalPower as_power(const Limits& limits) const;

    std::string to_string() const;

private:
    std::variant<Nat, CanonicalPower> value_;
};

/// Power tower k^k^...^k with `height` occurrences of k (height >= 1).
Bound tower(const Nat& k, std::size_t height, const Limits& limits = default_limits());

/// The constant N bounding lambda_1 and the functions f_t (t >= 2) bounding lambda_t.
class PhiSpec {
public:
    struct Constant {
        Nat value;
    };
    /// f_t(k) is a tower of k of height t - 1 + offset. Offset 0 gives
    /// f_2(k) = k, f_3(k) = k^k, ...; offset 1 gives g_2(k) = k^k, ...
    struct TowerHeight {
        std::size_t offset = 0;
    };
    /// Literal values f_t(x) keyed by (t, x).
    struct Table {
        std::map<std::pair<std::size_t, Nat>, Nat> values;
    };
    /// f_t(x) = caps[t - 2] whatever x is.
    struct PerIndexCaps {
        std::vector<Nat> caps;
    };
    /// Programmatic bound, e.g. a reduced multivariable bound.
    struct Function {
        std::string name;
        std::function<Nat(std::size_t t, const Nat& x)> fn;
    };
    using Rule = std::variant<Constant, TowerHeight, Table, PerIndexCaps, Function>;

    PhiSpec(Nat n_cap, Rule rule) : n_cap_(std::move(n_cap)), rule_(std::move(rule)) {}

    /// N = 1 with towers of height t - 1.
    static PhiSpec towers() { return {1, TowerHeight{0}}; }
    /// N = 1 with towers of height t.
    static PhiSpec tall_towers() { return {1, TowerHeight{1}}; }
    static PhiSpec constant(Nat n_cap, Nat value) { return {std::move(n_cap), Constant{std::move(value)}}; }
    static PhiSpec per_index(Nat n_cap, std::vector<Nat> caps)
    {
        return {std::move(n_cap), PerIndexCaps{std::move(caps)}};
    }

    const Nat& n_cap() const noexcept { return n_cap_; }
    const Rule& rule() const noexcept { return rule_; }

    /// f_t(x) for t >= 2.
    Bound bound(std::size_t t, const Nat& x, const Limits& limits = default_limits()) const;
    /// f_t(x) as an exact integer; throws CapExceeded when wider than the multiplicity cap.
    Nat bound_nat(std::size_t t, const Nat& x, const Limits& limits = default_limits()) const;

    /// Compact descriptor such as "N=1;tower:0".
    std::string descriptor() const;

private:
    Nat n_cap_;
    Rule rule_;
};

/// One element of a pattern set, with its structural provenance: the value is
/// a_level^(prod_{t < level} a_t^lambdas[t-1]) over the generating sequence.
/// level == 0 marks an element without lambda provenance.
struct PatternElement {
    CanonicalPower value;
    std::size_t level = 0;
    std::vector<Nat> lambdas;
};

/// Finite set of canonical powers, deduplicated by canonical equality. The
/// first provenance inserted for a value is kept.
class PatternSet {
public:
    /// Returns false when the value was already present.
    bool insert(PatternElement element);
    void merge(const PatternSet& other);

    bool contains(const CanonicalPower& value) const;
    /// Provenance of a stored value, or nullptr.
    const PatternElement* find(const CanonicalPower& value) const;

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    /// Elements in numeric order (decided by cmp).
    std::vector<const PatternElement*> sorted(const Limits& limits = default_limits()) const;

    /// Values in structural order (cheap; for iteration where order does not matter).
    std::vector<CanonicalPower> values() const;

    bool subset_of(const PatternSet& other) const;
    friend bool operator==(const PatternSet& a, const PatternSet& b);

private:
    std::map<CanonicalPower, PatternElement, StructuralLess> elements_;
};

/// Assigns W(S) to every finite set S of sequence terms, W(empty) included.
/// Subsets are passed as increasing values.
struct WeightFn {
    std::string name;
    std::function<Nat(std::span<const Nat>)> fn;

    static WeightFn constant(Nat c);
    /// W(S) = |S| + 1.
    static WeightFn size_plus_one();

    Nat operator()(std::span<const Nat> subset) const { return fn(subset); }
};

/// A bound F_n(t_1, ..., t_{n-1}) of several variables.
struct MultivarBound {
    std::size_t index; ///< n >= 2; F_n takes n - 1 arguments
    std::function<Nat(std::span<const Nat>)> fn;
};

// --- Generators ------------------------------------------------------------

/// EXP(a_1, ..., a_i): {a_1} for i = 1, otherwise all a_i^(e_{i-1} ... e_1)
/// with e_t in EXP(a_1..a_t) u {1}.
PatternSet exp_level(const Sequence& a, std::size_t i, const Limits& limits = default_limits());

/// FE(a_1, ..., a_n), the union of all levels.
PatternSet fe_set(const Sequence& a, const Limits& limits = default_limits());

/// EXP'(a_1, ..., a_m): every iterated exponentiation y^x with x from a
/// nonempty prefix and y from the complementary suffix.
PatternSet exp_prime_set(const Sequence& a, const Limits& limits = default_limits());

/// EXP_{N,Phi}(a_1, ..., a_i) over the full lambda box.
PatternSet exp_bounded_level(const Sequence& a, std::size_t i, const PhiSpec& phi,
    const Limits& limits = default_limits());

/// FE_{N,Phi}(a_1, ..., a_n).
PatternSet fe_bounded_set(const Sequence& a, const PhiSpec& phi, const Limits& limits = default_limits());

/// Bounded membership from the element's lambda vector alone: lambda_1 <= N and
/// lambda_t <= f_t(a_{t-1}) for t >= 2. Never enumerates the set.
bool contains_bounded(const PatternElement& v, const Sequence& a, const PhiSpec& phi,
    const Limits& limits = default_limits());

/// The family {a_k * 2^(sum_{i<k} lambda_i a_i)} as plain integers.
std::set<Nat> f_family(const Sequence& ap, const PhiSpec& phi, const Limits& limits = default_limits());

/// The exponential slice of FEP_W(x_1, ..., x_n) for x given in decreasing
/// order: all x_i^(prod_{s>i} x_s^lambda_s) with lambda_s <= W({x_{s+1}, ..., x_n}).
/// Provenance is recorded over the reversed (increasing) sequence.
PatternSet fep_w_set(std::span<const Nat> x, const WeightFn& w, const Limits& limits = default_limits());

/// All sums over nonempty subsets of distinct naturals.
std::set<Nat> fs_set(std::span<const Nat> x, const Limits& limits = default_limits());

/// a_n^(a_m^(a_{i_1}^(...^a_{i_k}))) with 1-based indices n > m > every idx and
/// idx.size() < m. The inner tower is evaluated exactly; the result carries
/// lambda_m = inner tower and all other lambdas 0.
PatternElement tower_build(const Sequence& a, std::size_t n, std::size_t m,
    std::span<const std::size_t> idx, const Limits& limits = default_limits());

/// f_n(t) = max{F_n(t_1, ..., t_{n-1}) : 1 <= t_j <= t}. Indices without a
/// supplied F_n are rejected when queried.
PhiSpec reduce_multivar_phi(Nat n_cap, std::vector<MultivarBound> bounds,
    const Limits& limits = default_limits());

struct LiftPair {
    Sequence lifted;                 ///< (2^{a'_1}, ..., 2^{a'_n})
    PatternSet exponential_image;    ///< {2^x : x in f_family(ap, phi)}
};

/// Lifts an additive-side sequence through k -> 2^k. With identical
/// per-index caps, exponential_image equals fe_bounded_set(lifted, phi).
LiftPair lift_pair(const Sequence& ap, const PhiSpec& phi, const Limits& limits = default_limits());

/// Phi derived from a weight function over the terms of a sequence:
/// f_n(t) = max{W(S) : S nonempty set of terms <= t, |S| <= n - 1}, N = W(empty).
PhiSpec phi_from_weight(std::span<const Nat> terms, const WeightFn& w);

/// Weight derived from Phi: W(S) = f_{|S|+1}(max S), W(empty) = N.
WeightFn weight_from_phi(const PhiSpec& phi, const Limits& limits = default_limits());

// --- Serialization -----------------------------------------------------------

/// {"family", "sequence", "phi", "elements", "count"} with elements in cmp order.
nlohmann::ordered_json to_json(const PatternSet& set, const std::string& family,
    const Sequence& sequence, const PhiSpec* phi, const Limits& limits = default_limits());

/// Same layout for families of plain integers (elements as decimal strings).
nlohmann::ordered_json to_json(const std::set<Nat>& set, const std::string& family,
    const std::vector<Nat>& sequence, const PhiSpec* phi);

} // namespace expramsey
