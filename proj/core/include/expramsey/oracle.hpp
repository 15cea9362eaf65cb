#pragma once

#include "expramsey/limits.hpp"
#include "expramsey/nat.hpp"
#include "expramsey/patterns.hpp"
#include "expramsey/tower.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace expramsey {

/// Outcome of one check on one instance. A failing report always carries a
/// counterexample.
struct CheckReport {
    std::string check;
    std::string instance;
    bool pass = true;
    std::optional<nlohmann::ordered_json> counterexample{};

    /// {"check", "instance", "pass", "counterexample"?}
    nlohmann::ordered_json to_json() const;
};

/// EXP'(sub) is contained in EXP(sub) for every subsequence sub of a, and
/// EXP(sub) is contained in EXP(a_1, ..., a_{i_m}).
CheckReport check_expprime_subset(const Sequence& a, const Limits& limits = default_limits());

/// Every element of every EXP level of a lies in EXP_{1,Phi} for the tower Phi
/// of height n - 1, judged from its exponent vector.
CheckReport check_exp_in_bounded(const Sequence& a, const Limits& limits = default_limits());

/// f_i(a_{i-1}) >= m_{i-1} ... m_1 for i = 2, ..., n + 1, where
/// m_t = max EXP(a_1, ..., a_t) and f is the height n - 1 tower Phi. The top
/// index bounds the exponents of a would-be next level.
CheckReport check_bound_chain(const Sequence& a, const Limits& limits = default_limits());

/// f_i(k) * k < f_i(k + 1) over the given ranges (i >= 3). When cases is not
/// null, the comparison path of each (i, k) is appended to it.
struct GrowthCase {
    std::size_t i;
    unsigned long k;
    CmpPath path;
};
CheckReport check_tower_growth(const std::vector<std::size_t>& i_range, const std::vector<unsigned long>& k_range,
    const Limits& limits = default_limits(), std::vector<GrowthCase>* cases = nullptr);

/// Both directions of the correspondence between FEP_W(x) (x decreasing) and
/// FE_{N,Phi} over the reversed sequence.
CheckReport check_fep_correspondence(std::span<const Nat> x, const WeightFn& w,
    const Limits& limits = default_limits());

/// {2^x : x in F_{N,Phi}(ap)} equals FE_{N,Phi}(2^{a'_1}, ..., 2^{a'_n}) with the
/// same per-index caps on both sides.
CheckReport check_lift_identity(const Sequence& ap, const Nat& n_cap, const std::vector<Nat>& caps,
    const Limits& limits = default_limits());

/// The reduced univariate bound dominates F_n on every increasing sequence
/// drawn from [1, window] of length n - 1 for each supplied index n.
CheckReport check_multivar_reduction(const std::string& name, const std::vector<MultivarBound>& bounds,
    unsigned long window, const Limits& limits = default_limits());

/// Names accepted by run_check, in the order run_all uses.
const std::vector<std::string>& check_names();

/// The default sweep of one check, in deterministic instance order.
std::vector<CheckReport> run_check(const std::string& name, unsigned workers = 1,
    const Limits& limits = default_limits());

std::vector<CheckReport> run_all(unsigned workers = 1, const Limits& limits = default_limits());

/// Increasing sequences with terms in [lo, hi] and length 1..max_len, in
/// length-then-lexicographic order.
std::vector<std::vector<Nat>> increasing_sequences(unsigned long lo, unsigned long hi, std::size_t max_len);

} // namespace expramsey
