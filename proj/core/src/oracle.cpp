#include "expramsey/oracle.hpp"

#include "expramsey/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <map>

namespace expramsey {

nlohmann::ordered_json CheckReport::to_json() const
{
    nlohmann::ordered_json j;
    j["check"] = check;
    j["instance"] = instance;
    j["pass"] = pass;
    if (counterexample)
        j["counterexample"] = *counterexample;
    return j;
}

namespace {

std::string list_string(std::span<const Nat> terms)
{
    std::string out = "(";
    for (std::size_t i = 0; i < terms.size(); ++i)
        out += (i ? "," : "") + to_decimal(terms[i]);
    return out + ")";
}

nlohmann::ordered_json decimal_list(std::span<const Nat> terms)
{
    auto j = nlohmann::ordered_json::array();
    for (const auto& t : terms)
        j.push_back(to_decimal(t));
    return j;
}

CheckReport fail(CheckReport report, nlohmann::ordered_json counterexample)
{
    report.pass = false;
    report.counterexample = std::move(counterexample);
    return report;
}

// First element of `sub` (numeric order) missing from `super`, if any.
const PatternElement* first_missing(const PatternSet& sub, const PatternSet& super, const Limits& limits)
{
    for (const auto* e : sub.sorted(limits))
        if (!super.contains(e->value))
            return e;
    return nullptr;
}

} // namespace

CheckReport check_expprime_subset(const Sequence& a, const Limits& limits)
{
    CheckReport report{"expprime-subset", a.to_string()};
    const std::size_t n = a.size();
    if (n >= 20)
        throw EnumerationBudgetExceeded("too many subsequences to sweep");
    std::vector<PatternSet> full_levels;
    for (std::size_t i = 1; i <= n; ++i)
        full_levels.push_back(exp_level(a, i, limits));

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> positions;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1)
                positions.push_back(j + 1);
        const auto sub = a.subsequence(positions);
        const auto prime = exp_prime_set(sub, limits);
        const auto level = exp_level(sub, sub.size(), limits);
        const auto& full = full_levels[positions.back() - 1];
        auto describe = [&](const PatternElement* e, const char* missing_from) {
            nlohmann::ordered_json j;
            j["subsequence"] = decimal_list(sub.terms());
            j["element"] = to_json(e->value, limits);
            j["missing_from"] = missing_from;
            return j;
        };
        if (const auto* e = first_missing(prime, level, limits))
            return fail(report, describe(e, "EXP(subsequence)"));
        if (const auto* e = first_missing(level, full, limits))
            return fail(report, describe(e, "EXP(a_1..a_im)"));
    }
    return report;
}

CheckReport check_exp_in_bounded(const Sequence& a, const Limits& limits)
{
    CheckReport report{"exp-in-bounded", a.to_string()};
    const auto phi = PhiSpec::towers();
    for (std::size_t i = 1; i <= a.size(); ++i) {
        const auto level = exp_level(a, i, limits);
        for (const auto* e : level.sorted(limits)) {
            if (!contains_bounded(*e, a, phi, limits)) {
                nlohmann::ordered_json j;
                j["level"] = i;
                j["element"] = to_json(e->value, limits);
                j["lambdas"] = decimal_list(e->lambdas);
                return fail(report, j);
            }
        }
    }
    return report;
}

CheckReport check_bound_chain(const Sequence& a, const Limits& limits)
{
    CheckReport report{"bound-chain", a.to_string()};
    const auto phi = PhiSpec::towers();
    std::vector<CanonicalPower> maxima; // m_1, m_2, ...
    for (std::size_t t = 1; t <= a.size(); ++t)
        maxima.push_back(exp_level(a, t, limits).sorted(limits).back()->value);
    for (std::size_t i = 2; i <= a.size() + 1; ++i) {
        const CanonicalPower bound = phi.bound(i, a.at(i - 1), limits).as_power(limits);
        const std::span<const CanonicalPower> product(maxima.data(), i - 1);
        const auto c = compare_products(std::span<const CanonicalPower>(&bound, 1), product, limits);
        if (c.order < 0) {
            nlohmann::ordered_json j;
            j["i"] = i;
            j["bound"] = to_json(bound, limits);
            j["maxima"] = nlohmann::ordered_json::array();
            for (const auto& m : product)
                j["maxima"].push_back(to_json(m, limits));
            return fail(report, j);
        }
    }
    return report;
}

CheckReport check_tower_growth(const std::vector<std::size_t>& i_range, const std::vector<unsigned long>& k_range,
    const Limits& limits, std::vector<GrowthCase>* cases)
{
    std::string instance = "i=";
    for (std::size_t j = 0; j < i_range.size(); ++j)
        instance += (j ? "," : "") + std::to_string(i_range[j]);
    instance += ";k=";
    for (std::size_t j = 0; j < k_range.size(); ++j)
        instance += (j ? "," : "") + std::to_string(k_range[j]);
    CheckReport report{"tower-growth", instance};

    const auto phi = PhiSpec::towers();
    for (auto i : i_range) {
        if (i < 3)
            throw InvalidArgument("the growth inequality is stated for i >= 3");
        for (auto k : k_range) {
            if (k < 1)
                throw InvalidArgument("the growth inequality is stated for k >= 1");
            const std::vector<CanonicalPower> lhs{phi.bound(i, Nat(k), limits).as_power(limits),
                CanonicalPower::of(Nat(k), limits)};
            const std::vector<CanonicalPower> rhs{phi.bound(i, Nat(k + 1), limits).as_power(limits)};
            const auto c = compare_products(lhs, rhs, limits);
            if (cases)
                cases->push_back({i, k, c.path});
            if (c.order >= 0) {
                nlohmann::ordered_json j;
                j["i"] = i;
                j["k"] = k;
                j["f_i(k)"] = to_json(lhs[0], limits);
                j["f_i(k+1)"] = to_json(rhs[0], limits);
                return fail(report, j);
            }
        }
    }
    return report;
}

CheckReport check_fep_correspondence(std::span<const Nat> x, const WeightFn& w, const Limits& limits)
{
    CheckReport report{"fep-correspondence", "x=" + list_string(x) + ";W=" + w.name};
    std::vector<Nat> reversed(x.rbegin(), x.rend());
    const auto a = Sequence::exponential(reversed);

    // FEP_W(x) inside FE_{N,Phi}(reversed) with N = W(empty) and the max formula.
    const auto phi = phi_from_weight(a.terms(), w);
    const auto fep = fep_w_set(x, w, limits);
    const auto fe = fe_bounded_set(a, phi, limits);
    auto describe = [&](const PatternElement* e, const char* direction) {
        nlohmann::ordered_json j;
        j["direction"] = direction;
        j["element"] = to_json(e->value, limits);
        return j;
    };
    if (const auto* e = first_missing(fep, fe, limits))
        return fail(report, describe(e, "FEP_W in FE_{N,Phi}"));

    // Conversely FE_{N,Phi}(a) inside FEP_{W'}(reversed a) with W'(S) = f_{|S|+1}(max S).
    const auto w_back = weight_from_phi(phi, limits);
    const auto fep_back = fep_w_set(x, w_back, limits);
    if (const auto* e = first_missing(fe, fep_back, limits))
        return fail(report, describe(e, "FE_{N,Phi} in FEP_W'"));
    return report;
}

CheckReport check_lift_identity(const Sequence& ap, const Nat& n_cap, const std::vector<Nat>& caps,
    const Limits& limits)
{
    CheckReport report{"lift-identity",
        "ap=" + list_string(ap.terms()) + ";N=" + to_decimal(n_cap) + ";caps=" + list_string(caps)};
    const auto phi = PhiSpec::per_index(n_cap, caps);
    const auto lifted = lift_pair(ap, phi, limits);
    const auto fe = fe_bounded_set(lifted.lifted, phi, limits);
    auto describe = [&](const PatternElement* e, const char* only_in) {
        nlohmann::ordered_json j;
        j["only_in"] = only_in;
        j["element"] = to_json(e->value, limits);
        return j;
    };
    if (const auto* e = first_missing(lifted.exponential_image, fe, limits))
        return fail(report, describe(e, "2^F"));
    if (const auto* e = first_missing(fe, lifted.exponential_image, limits))
        return fail(report, describe(e, "FE(lifted)"));
    return report;
}

std::vector<std::vector<Nat>> increasing_sequences(unsigned long lo, unsigned long hi, std::size_t max_len)
{
    std::vector<std::vector<Nat>> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<unsigned long> current;
        auto rec = [&](auto&& self, unsigned long next) -> void {
            if (current.size() == len) {
                out.emplace_back(current.begin(), current.end());
                return;
            }
            for (unsigned long v = next; v <= hi; ++v) {
                current.push_back(v);
                self(self, v + 1);
                current.pop_back();
            }
        };
        rec(rec, lo);
    }
    return out;
}

CheckReport check_multivar_reduction(const std::string& name, const std::vector<MultivarBound>& bounds,
    unsigned long window, const Limits& limits)
{
    CheckReport report{"multivar-reduction", name + ";window=" + std::to_string(window)};
    const auto phi = reduce_multivar_phi(0, bounds, limits);
    for (const auto& b : bounds) {
        for (const auto& seq : increasing_sequences(1, window, b.index - 1)) {
            if (seq.size() != b.index - 1)
                continue;
            const Nat f = phi.bound_nat(b.index, seq.back(), limits);
            const Nat value = b.fn(seq);
            if (f < value) {
                nlohmann::ordered_json j;
                j["n"] = b.index;
                j["sequence"] = decimal_list(seq);
                j["F_n"] = to_decimal(value);
                j["f_n"] = to_decimal(f);
                return fail(report, j);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Default sweeps

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"expprime-subset", "exp-in-bounded", "bound-chain",
        "tower-growth", "fep-correspondence", "lift-identity", "multivar-reduction"};
    return names;
}

namespace {

using Job = std::function<CheckReport()>;

std::vector<Job> sweep_jobs(const std::string& name, const Limits& limits)
{
    std::vector<Job> jobs;
    if (name == "expprime-subset" || name == "exp-in-bounded" || name == "bound-chain") {
        auto check = name == "expprime-subset" ? check_expprime_subset
            : name == "exp-in-bounded"         ? check_exp_in_bounded
                                               : check_bound_chain;
        for (auto& terms : increasing_sequences(2, 6, 4))
            jobs.push_back([check, terms, &limits] { return check(Sequence::exponential(terms), limits); });
    } else if (name == "tower-growth") {
        for (std::size_t i = 3; i <= 5; ++i)
            for (unsigned long k = 1; k <= 4; ++k)
                jobs.push_back([i, k, &limits] { return check_tower_growth({i}, {k}, limits); });
    } else if (name == "fep-correspondence") {
        const std::vector<WeightFn> weights{WeightFn::constant(0), WeightFn::constant(1), WeightFn::size_plus_one()};
        for (auto terms : increasing_sequences(2, 7, 3)) {
            std::reverse(terms.begin(), terms.end());
            for (const auto& w : weights)
                jobs.push_back([terms, w, &limits] { return check_fep_correspondence(terms, w, limits); });
        }
    } else if (name == "lift-identity") {
        for (const auto& terms : increasing_sequences(1, 5, 4)) {
            const std::size_t cap_count = terms.size() > 2 ? terms.size() - 2 : 0;
            for (unsigned long n_cap = 0; n_cap <= 2; ++n_cap) {
                std::vector<Nat> caps(cap_count, Nat(0));
                while (true) {
                    jobs.push_back([terms, n_cap, caps, &limits] {
                        return check_lift_identity(Sequence::additive(terms), Nat(n_cap), caps, limits);
                    });
                    std::size_t j = cap_count;
                    while (j > 0 && caps[j - 1] == 2)
                        caps[--j] = 0;
                    if (j == 0)
                        break;
                    ++caps[j - 1];
                }
            }
        }
    } else if (name == "multivar-reduction") {
        auto sum = [](std::span<const Nat> t) {
            Nat s = 0;
            for (const auto& v : t)
                s += v;
            return s;
        };
        auto product = [](std::span<const Nat> t) {
            Nat p = 1;
            for (const auto& v : t)
                p *= v;
            return p;
        };
        auto constant = [](std::span<const Nat>) { return Nat(7); };
        auto spread = [](std::span<const Nat> t) -> Nat { return (t.back() - t.front()) * t.size(); };
        const std::vector<std::pair<std::string, std::function<Nat(std::span<const Nat>)>>> fns{
            {"sum", sum}, {"product", product}, {"constant", constant}, {"spread", spread}};
        for (const auto& [label, fn] : fns)
            jobs.push_back([label, fn, &limits] {
                return check_multivar_reduction(label, {{3, fn}, {4, fn}}, 5, limits);
            });
    } else {
        throw InvalidArgument("unknown check " + name);
    }
    return jobs;
}

} // namespace

std::vector<CheckReport> run_check(const std::string& name, unsigned workers, const Limits& limits)
{
    const auto jobs = sweep_jobs(name, limits);
    return detail::parallel_map<CheckReport>(jobs.size(), workers, [&](std::size_t i) { return jobs[i](); });
}

std::vector<CheckReport> run_all(unsigned workers, const Limits& limits)
{
    std::vector<CheckReport> out;
    for (const auto& name : check_names()) {
        auto part = run_check(name, workers, limits);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

} // namespace expramsey
