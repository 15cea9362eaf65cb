#pragma once

#include "expramsey/colorings.hpp"
#include "expramsey/limits.hpp"
#include "expramsey/nat.hpp"
#include "expramsey/patterns.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace expramsey {

/// {a, b, a + b} with a <= b. allow_equal admits a = b, as in the classical
/// Schur numbers.
struct AdditiveSchur {
    bool allow_equal = true;
};

/// {a, b, a^b} with a, b >= 2 as an ordered pair.
struct ExpSchur {
    bool allow_equal = false;
};

/// Finite sums of each k-subset.
struct FSk {
    std::size_t k;
};

/// FE_{N,Phi} of each increasing n-tuple.
struct FEPrefix {
    std::size_t n;
    PhiSpec phi;
};

struct InstanceFamily {
    std::variant<AdditiveSchur, ExpSchur, FSk, FEPrefix> kind;
    std::uint64_t window; ///< M

    /// Least colored integer: 2 for the exponential families, else 1.
    std::uint64_t first() const;
    std::string name() const;
};

/// One instance in generation order, e.g. (a, b, a^b).
using Instance = std::vector<std::uint64_t>;

/// Instances within [first, M]. Schur-type triples are ordered by their
/// largest element then a; FSk and FEPrefix by the generating tuple.
std::vector<Instance> enumerate_instances(const InstanceFamily& fam,
    const Limits& limits = default_limits());

enum class Verdict { WitnessColoring, Unavoidable, WitnessSequence, NoWitness };

std::string to_string(Verdict v);

struct SearchStats {
    std::uint64_t nodes = 0;
    double millis = 0; ///< wall time; not reproducible
};

struct SearchOutcome {
    Verdict verdict;
    /// Colors of first..M for WitnessColoring.
    std::vector<Color> coloring;
    /// The witness for WitnessSequence.
    std::vector<std::uint64_t> sequence;
    SearchStats stats;
};

enum class Engine { Exhaustive, Backtracking };

struct SearchOptions {
    Engine engine = Engine::Backtracking;
    unsigned workers = 1;
};

/// Is there an r-coloring of [first, M] with no monochromatic instance? The
/// reported coloring is the lexicographically least one. Node counts do not
/// depend on the worker count.
SearchOutcome avoidance_search(const InstanceFamily& fam, std::size_t r,
    const SearchOptions& options = {}, const Limits& limits = default_limits());

/// Least increasing a_1 < ... < a_k <= M (a_1 >= 2, k = target_len) such that
/// fe_bounded_set(a, phi) is monochromatic under c.
SearchOutcome witness_search(const Coloring& c, std::uint64_t window, const PhiSpec& phi,
    std::size_t target_len, const SearchOptions& options = {}, const Limits& limits = default_limits());

/// Independent rechecks of reported witnesses.
bool coloring_avoids(const std::vector<Instance>& instances, std::uint64_t first,
    const std::vector<Color>& coloring);
bool sequence_is_witness(const Coloring& c, const std::vector<std::uint64_t>& seq, const PhiSpec& phi,
    const Limits& limits = default_limits());

} // namespace expramsey
