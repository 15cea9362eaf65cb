// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "cli.hpp"
#include "expramsey/oracle.hpp"
#include "expramsey/search.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace expramsey;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && seconds >= limit_seconds) {
        outcome.pass = false;
        outcome.detail += " over time limit";
    }
    if (!outcome.pass)
        ++failures;
    std::printf("%s  %2d  %-40s %8.3fs (limit %gs)  %s\n", outcome.pass ? "PASS" : "FAIL", id, title.c_str(),
        seconds, limit_seconds, outcome.detail.c_str());
    std::fflush(stdout);
}

Outcome all_pass(const std::vector<CheckReport>& reports, std::size_t expected)
{
    std::size_t passed = 0;
    for (const auto& r : reports)
        passed += r.pass ? 1 : 0;
    std::ostringstream detail;
    detail << passed << "/" << reports.size() << " instances";
    return {passed == reports.size() && reports.size() == expected, detail.str()};
}

Nat power_of(unsigned long b, unsigned long e)
{
    Nat out;
    mpz_ui_pow_ui(out.get_mpz_t(), b, e);
    return out;
}

std::string cli_output(const std::vector<std::string>& args, int& code)
{
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run(args, out, err);
    return out.str();
}

// Every evaluable pattern value from the sweeps of criteria 1 to 7.
std::vector<CanonicalPower> sweep_values(const Limits& limits)
{
    std::vector<CanonicalPower> out;
    auto take = [&](const PatternSet& s) {
        for (const auto& v : s.values())
            if (eval_capped(v, limits.value_bit_cap))
                out.push_back(v);
    };
    for (const auto& terms : increasing_sequences(2, 6, 4)) {
        const auto a = Sequence::exponential(terms);
        take(fe_set(a, limits));
        take(exp_prime_set(a, limits));
    }
    const std::vector<WeightFn> weights{WeightFn::constant(0), WeightFn::constant(1), WeightFn::size_plus_one()};
    for (auto terms : increasing_sequences(2, 7, 3)) {
        const auto a = Sequence::exponential(terms);
        std::reverse(terms.begin(), terms.end());
        for (const auto& w : weights) {
            take(fep_w_set(terms, w, limits));
            take(fe_bounded_set(a, phi_from_weight(a.terms(), w), limits));
        }
    }
    for (const auto& terms : increasing_sequences(1, 5, 4))
        for (unsigned long cap = 0; cap <= 2; ++cap) {
            const auto phi = PhiSpec::per_index(cap, std::vector<Nat>(4, Nat(cap)));
            const auto lp = lift_pair(Sequence::additive(terms), phi, limits);
            take(lp.exponential_image);
            take(fe_bounded_set(lp.lifted, phi, limits));
        }
    return out;
}

} // namespace

int main()
{
    const Limits& limits = default_limits();

    criterion(1, "display reproduction", 1, [] {
        int code = 0;
        const auto text = cli_output({"gen", "exp", "--seq", "2,3,5", "--json"}, code);
        const auto j = nlohmann::json::parse(text);
        std::vector<std::string> got;
        for (const auto& e : j["elements"])
            got.push_back(e["root"].get<std::string>() + "^" + e["decimal"].get<std::string>());
        std::vector<std::string> want;
        for (unsigned long e : {1, 2, 3, 6, 9, 18})
            want.push_back("5^" + power_of(5, e).get_str());
        return Outcome{code == 0 && got == want, std::to_string(got.size()) + " values"};
    });

    criterion(2, "EXP' inclusion sweep", 30, [] { return all_pass(run_check("expprime-subset"), 30); });

    criterion(3, "tower-bounded inclusion sweep", 60, [&] {
        auto outcome = all_pass(run_check("exp-in-bounded"), 30);
        // f_4(5) = 5^5^5 as an exact multiplicity bound.
        const Nat f45 = PhiSpec::towers().bound_nat(4, 5, limits);
        const bool exact = f45 == power_of(5, 3125);
        // A level-5 element whose lambda_4 sits exactly on that bound, and one just past it.
        std::vector<Nat> terms{2, 3, 5, 6, 7};
        const auto a = Sequence::exponential(terms);
        auto element = [&](const Nat& lambda4) {
            std::vector<Nat> lambdas{0, 0, 0, lambda4};
            return PatternElement{canonicalize(7, FactoredExponent::of(6).pow(lambda4), limits), 5, lambdas};
        };
        const bool on_bound = contains_bounded(element(f45), a, PhiSpec::towers(), limits);
        const bool past_bound = contains_bounded(element(f45 + 1), a, PhiSpec::towers(), limits);
        outcome.pass = outcome.pass && exact && on_bound && !past_bound;
        outcome.detail += "; f_4(5) has " + std::to_string(bit_length(f45)) + " bits";
        return outcome;
    });

    criterion(4, "tower growth inequality", 10, [&] {
        std::vector<GrowthCase> cases;
        const auto report = check_tower_growth({3, 4, 5}, {1, 2, 3, 4}, limits, &cases);
        std::size_t symbolic = 0;
        for (const auto& c : cases)
            symbolic += c.path == CmpPath::LogBounds ? 1 : 0;
        return Outcome{report.pass && cases.size() == 12 && symbolic >= 1,
            std::to_string(cases.size()) + " cases, " + std::to_string(symbolic) + " by log bounds"};
    });

    criterion(5, "bound chain sweep", 30, [] { return all_pass(run_check("bound-chain"), 30); });

    criterion(6, "lift identity sweep", 30, [] { return all_pass(run_check("lift-identity"), 270); });

    criterion(7, "FEP_W correspondence sweep", 30, [] { return all_pass(run_check("fep-correspondence"), 123); });

    criterion(8, "arithmetic core", 30, [&] {
        std::mt19937_64 rng(0xacce55);
        auto uniform = [&](unsigned long lo, unsigned long hi) {
            return std::uniform_int_distribution<unsigned long>(lo, hi)(rng);
        };
        const unsigned long primes[] = {2, 3, 5, 7, 11, 13, 17};
        std::size_t mismatches = 0;
        for (int i = 0; i < 1000; ++i) {
            FactoredExponent e;
            for (unsigned long t = uniform(0, 3); t > 0; --t)
                e *= FactoredExponent::prime_power(Nat(primes[uniform(0, 6)]), Nat(uniform(1, 8)));
            const Nat base(uniform(1, 1'000'000));
            const Nat m(uniform(1, 1'000'000'000));
            if (pow_mod(base, e, m, limits) != pow_mod(base, e, m, limits, PowModRoute::ForceLift))
                ++mismatches;
        }
        // Canonical equality against numeric equality: each value has one representation and back.
        const auto values = sweep_values(limits);
        std::map<Nat, CanonicalPower> by_value;
        std::map<CanonicalPower, Nat, StructuralLess> by_power;
        std::size_t conflicts = 0;
        for (const auto& p : values) {
            const Nat v = *eval_capped(p, limits.value_bit_cap);
            auto [it, fresh] = by_value.emplace(v, p);
            if (!fresh && !(it->second == p))
                ++conflicts;
            auto [jt, fresh_power] = by_power.emplace(p, v);
            if (!fresh_power && jt->second != v)
                ++conflicts;
        }
        return Outcome{mismatches == 0 && conflicts == 0,
            std::to_string(mismatches) + " pow_mod mismatches, " + std::to_string(conflicts) + " conflicts over "
                + std::to_string(by_value.size()) + " distinct values"};
    });

    criterion(9, "additive Schur values", 600, [] {
        auto verdict = [](std::uint64_t m, std::size_t r, Engine engine) {
            return avoidance_search({AdditiveSchur{}, m}, r, {engine, 1}).verdict;
        };
        const auto start = std::chrono::steady_clock::now();
        const bool r2 = verdict(4, 2, Engine::Backtracking) == Verdict::WitnessColoring
            && verdict(5, 2, Engine::Backtracking) == Verdict::Unavoidable
            && verdict(4, 2, Engine::Exhaustive) == Verdict::WitnessColoring
            && verdict(5, 2, Engine::Exhaustive) == Verdict::Unavoidable;
        const double r2_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool r3 = verdict(13, 3, Engine::Backtracking) == Verdict::WitnessColoring
            && verdict(14, 3, Engine::Backtracking) == Verdict::Unavoidable;
        return Outcome{r2 && r3 && r2_seconds < 10,
            std::string("S(2)=4 ") + (r2 ? "ok" : "wrong") + ", S(3)=13 " + (r3 ? "ok" : "wrong")};
    });

    criterion(10, "engine agreement", 300, [] {
        std::size_t combos = 0;
        std::size_t disagreements = 0;
        for (int family = 0; family < 2; ++family)
            for (std::size_t r = 1; r <= 2; ++r)
                for (std::uint64_t m = 1; m <= 16; ++m) {
                    InstanceFamily fam = family == 0 ? InstanceFamily{AdditiveSchur{}, m} : InstanceFamily{ExpSchur{}, m};
                    const auto a = avoidance_search(fam, r, {Engine::Exhaustive, 1});
                    const auto b = avoidance_search(fam, r, {Engine::Backtracking, 1});
                    ++combos;
                    if (a.verdict != b.verdict || a.coloring != b.coloring)
                        ++disagreements;
                }
        return Outcome{disagreements == 0,
            std::to_string(combos) + " combinations, " + std::to_string(disagreements) + " disagreements"};
    });

    criterion(11, "determinism", 600, [] {
        const std::vector<std::vector<std::string>> commands{{"verify", "all", "--json"},
            {"search", "witness", "--coloring", "mod:3", "--window", "200", "--phi", "towers", "--length", "2"}};
        std::size_t runs = 0;
        bool same = true;
        for (const auto& command : commands) {
            std::optional<std::string> reference;
            for (const char* workers : {"1", "4"})
                for (int rep = 0; rep < 3; ++rep) {
                    std::vector<std::string> args{"--workers", workers};
                    args.insert(args.end(), command.begin(), command.end());
                    int code = 0;
                    const auto text = cli_output(args, code);
                    ++runs;
                    if (code != 0 || (reference && *reference != text))
                        same = false;
                    if (!reference)
                        reference = text;
                }
        }
        return Outcome{same, std::to_string(runs) + " runs byte-identical: " + (same ? "yes" : "no")};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
