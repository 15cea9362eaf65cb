#pragma once

#include "expramsey/limits.hpp"
#include "expramsey/nat.hpp"
#include "expramsey/patterns.hpp"
#include "expramsey/tower.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace expramsey {

using Color = std::size_t;

/// A finite coloring of the naturals {1, 2, ...}, immutable once built.
class Coloring {
public:
    /// Color of v is colors[v mod m].
    struct ResidueMod {
        Nat m;
        std::vector<Color> colors;
    };
    /// Color of v is bit_length(v) mod r.
    struct BitLengthMod {
        std::size_t r;
    };
    /// Color of v is colors[v - 1] for 1 <= v <= colors.size().
    struct ExplicitTable {
        std::vector<Color> colors;
    };
    /// Color of v is first(v) * second.num_colors() + second(v).
    struct Composite {
        std::shared_ptr<const Coloring> first;
        std::shared_ptr<const Coloring> second;
    };
    using Rule = std::variant<ResidueMod, BitLengthMod, ExplicitTable, Composite>;

    /// With no colors given, residue i gets color i.
    static Coloring residue_mod(Nat m, std::vector<Color> colors = {});
    static Coloring bit_length_mod(std::size_t r);
    static Coloring explicit_table(std::vector<Color> colors);
    static Coloring composite(Coloring first, Coloring second);

    /// "mod:m[:c0,c1,...]", "bits:r", "table:@file.csv" (rows index,color) or
    /// "prod:spec1|spec2".
    static Coloring parse(std::string_view spec);

    std::size_t num_colors() const noexcept { return r_; }
    const Rule& rule() const noexcept { return rule_; }

    /// Color of an integer v >= 1.
    Color color_of(const Nat& v, const Limits& limits = default_limits()) const;
    Color color_of(const CanonicalPower& v, const Limits& limits = default_limits()) const;

    std::string descriptor() const;

private:
    Coloring(std::size_t r, Rule rule) : r_(r), rule_(std::move(rule)) {}

    std::size_t r_;
    Rule rule_;
};

/// Bit length of a canonical power, reduced mod r. Exact: evaluates when the
/// value fits, reads the exponent directly for root 2, and otherwise refines
/// certified bounds on E * log2(root), which is never an integer there.
std::size_t bit_length_mod(const CanonicalPower& v, std::size_t r, const Limits& limits = default_limits());

template <typename T>
struct Monochromatic {
    Color color;
};

template <typename T>
struct NotMonochromatic {
    T first;
    T second;
};

/// Either the common color, or the least element (numeric order) together
/// with the least element colored differently from it.
template <typename T>
using MonoResult = std::variant<Monochromatic<T>, NotMonochromatic<T>>;

MonoResult<CanonicalPower> is_monochromatic(const Coloring& c, const PatternSet& s,
    const Limits& limits = default_limits());
MonoResult<Nat> is_monochromatic(const Coloring& c, const std::set<Nat>& s,
    const Limits& limits = default_limits());

} // namespace expramsey
