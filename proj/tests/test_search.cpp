#include "expramsey/errors.hpp"
#include "expramsey/search.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace expramsey;

namespace {

// Lexicographically least r-coloring of [first, M] avoiding every instance, by brute force.
std::optional<std::vector<Color>> brute_force_avoid(const std::vector<Instance>& instances, std::uint64_t first,
    std::uint64_t m, std::size_t r)
{
    const std::size_t width = m >= first ? m - first + 1 : 0;
    std::vector<Color> colors(width, 0);
    while (true) {
        bool ok = true;
        for (const auto& inst : instances) {
            const Color c = colors[inst[0] - first];
            bool mono = true;
            for (auto v : inst)
                mono = mono && colors[v - first] == c;
            if (mono) {
                ok = false;
                break;
            }
        }
        if (ok)
            return colors;
        std::size_t j = width;
        while (j > 0 && colors[j - 1] == r - 1)
            colors[--j] = 0;
        if (j == 0)
            return std::nullopt;
        ++colors[j - 1];
    }
}

std::vector<Instance> schur_oracle(std::uint64_t m, bool allow_equal)
{
    std::vector<Instance> out;
    for (std::uint64_t c = 2; c <= m; ++c)
        for (std::uint64_t a = 1; 2 * a <= c; ++a)
            if (allow_equal || 2 * a != c)
                out.push_back({a, c - a, c});
    return out;
}

InstanceFamily schur(std::uint64_t m, bool allow_equal = true)
{
    return {AdditiveSchur{allow_equal}, m};
}

InstanceFamily expschur(std::uint64_t m)
{
    return {ExpSchur{}, m};
}

} // namespace

TEST_CASE("enumerate_instances examples")
{
    CHECK(enumerate_instances(expschur(16))
        == std::vector<Instance>{{2, 3, 8}, {3, 2, 9}, {2, 4, 16}, {4, 2, 16}});
    CHECK(enumerate_instances(schur(2, false)).empty());
    CHECK(enumerate_instances(schur(2)) == std::vector<Instance>{{1, 1, 2}});
    CHECK(enumerate_instances({FSk{2}, 5})
        == std::vector<Instance>{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {2, 3, 5}});
    CHECK(enumerate_instances({ExpSchur{true}, 16}).size() == 5);
}

TEST_CASE("Schur instances match a direct listing")
{
    for (std::uint64_t m = 1; m <= 30; ++m)
        for (bool eq : {true, false}) {
            auto got = enumerate_instances(schur(m, eq));
            auto want = schur_oracle(m, eq);
            CHECK(got == want);
        }
}

TEST_CASE("FE prefix instances")
{
    // N = 1, f = 1: (a, b) gives {a, b, b^a}; within 30 only (2,3), (2,4), (2,5) fit.
    const InstanceFamily fam{FEPrefix{2, PhiSpec::constant(1, 1)}, 30};
    CHECK(enumerate_instances(fam) == std::vector<Instance>{{2, 3, 9}, {2, 4, 16}, {2, 5, 25}});
    CHECK(fam.first() == 2);
    CHECK(fam.name() == "fe2[N=1;const:1]");
}

TEST_CASE("enumeration budget")
{
    Limits l;
    l.enumeration_budget = 10;
    CHECK_THROWS_AS(enumerate_instances({FSk{3}, 40}, l), EnumerationBudgetExceeded);
}

TEST_CASE("avoidance examples")
{
    for (auto engine : {Engine::Exhaustive, Engine::Backtracking}) {
        const SearchOptions opt{engine, 1};
        auto four = avoidance_search(schur(4), 2, opt);
        CHECK(four.verdict == Verdict::WitnessColoring);
        CHECK(four.coloring == std::vector<Color>{0, 1, 1, 0});
        CHECK(avoidance_search(schur(5), 2, opt).verdict == Verdict::Unavoidable);

        auto empty = avoidance_search(schur(2, false), 3, opt);
        CHECK(empty.verdict == Verdict::WitnessColoring);
        CHECK(empty.coloring == std::vector<Color>{0, 0});
    }
    CHECK_THROWS_AS(avoidance_search(schur(4), 0), InvalidArgument);
}

TEST_CASE("avoidance agrees with brute force")
{
    const std::vector<InstanceFamily> families{schur(1), schur(3), schur(6), schur(8), schur(9, false),
        expschur(9), expschur(16), {FSk{2}, 9}, {FSk{3}, 10}, {FEPrefix{2, PhiSpec::constant(1, 1)}, 16}};
    for (const auto& fam : families)
        for (std::size_t r = 1; r <= 3; ++r) {
            if (r == 3 && fam.window > 10)
                continue;
            const auto instances = enumerate_instances(fam);
            const auto want = brute_force_avoid(instances, fam.first(), fam.window, r);
            for (auto engine : {Engine::Exhaustive, Engine::Backtracking}) {
                const auto got = avoidance_search(fam, r, {engine, 1});
                CAPTURE(fam.name());
                CAPTURE(r);
                if (want) {
                    CHECK(got.verdict == Verdict::WitnessColoring);
                    CHECK(got.coloring == *want);
                    CHECK(coloring_avoids(instances, fam.first(), got.coloring));
                } else {
                    CHECK(got.verdict == Verdict::Unavoidable);
                }
            }
        }
}

TEST_CASE("avoidability is monotone in the window and the number of colors")
{
    for (std::size_t r = 1; r <= 3; ++r) {
        bool unavoidable = false;
        for (std::uint64_t m = 1; m <= (r == 3 ? 15u : 8u); ++m) {
            const bool now = avoidance_search(schur(m), r).verdict == Verdict::Unavoidable;
            CHECK((!unavoidable || now));
            unavoidable = now;
            if (r > 1 && avoidance_search(schur(m), r - 1).verdict == Verdict::WitnessColoring)
                CHECK_FALSE(now);
        }
    }
}

TEST_CASE("search is deterministic across worker counts")
{
    for (const auto& fam : {schur(13), schur(14), expschur(40)}) {
        const auto one = avoidance_search(fam, 3, {Engine::Backtracking, 1});
        const auto four = avoidance_search(fam, 3, {Engine::Backtracking, 4});
        CHECK(one.verdict == four.verdict);
        CHECK(one.coloring == four.coloring);
        CHECK(one.stats.nodes == four.stats.nodes);
    }
    const auto c = Coloring::residue_mod(3);
    const auto a = witness_search(c, 200, PhiSpec::towers(), 2, {Engine::Backtracking, 1});
    const auto b = witness_search(c, 200, PhiSpec::towers(), 2, {Engine::Backtracking, 4});
    CHECK(a.sequence == b.sequence);
    CHECK(a.stats.nodes == b.stats.nodes);
}

TEST_CASE("witness search under a degenerate lambda box")
{
    const auto parity = Coloring::residue_mod(2);
    const auto out = witness_search(parity, 100, PhiSpec::constant(0, 0), 3);
    CHECK(out.verdict == Verdict::WitnessSequence);
    CHECK(out.sequence == std::vector<std::uint64_t>{2, 4, 6});
    CHECK(sequence_is_witness(parity, out.sequence, PhiSpec::constant(0, 0)));

    const auto single = witness_search(Coloring::residue_mod(5), 100, PhiSpec::towers(), 1);
    CHECK(single.sequence == std::vector<std::uint64_t>{2});

    CHECK(witness_search(parity, 5, PhiSpec::constant(0, 0), 3).verdict == Verdict::NoWitness);
}

TEST_CASE("witness search agrees with an exhaustive pair scan")
{
    // With N = 1 and f_2(k) = k, FE(a, b) = {a, b, b^a}.
    const Nat three = 3;
    auto color = [&](const Nat& v) { return Nat(v % three).get_ui(); };
    std::optional<std::vector<std::uint64_t>> want;
    for (std::uint64_t a = 2; a <= 200 && !want; ++a)
        for (std::uint64_t b = a + 1; b <= 200 && !want; ++b) {
            Nat top;
            const Nat base(static_cast<unsigned long>(b));
            mpz_powm_ui(top.get_mpz_t(), base.get_mpz_t(), a, three.get_mpz_t());
            const auto c = color(Nat(static_cast<unsigned long>(a)));
            if (color(base) == c && top.get_ui() == c)
                want = std::vector<std::uint64_t>{a, b};
        }
    REQUIRE(want);
    const auto out = witness_search(Coloring::residue_mod(3), 200, PhiSpec::towers(), 2);
    CHECK(out.verdict == Verdict::WitnessSequence);
    CHECK(out.sequence == *want);
}

TEST_CASE("rechecks reject bad witnesses")
{
    const auto instances = schur_oracle(4, true);
    CHECK_FALSE(coloring_avoids(instances, 1, {0, 0, 0, 0}));
    CHECK(coloring_avoids(instances, 1, {0, 1, 1, 0}));
    CHECK_FALSE(sequence_is_witness(Coloring::residue_mod(2), {2, 3}, PhiSpec::constant(0, 0)));
}

TEST_CASE("verdict names")
{
    CHECK(to_string(Verdict::WitnessColoring) == "WitnessColoring");
    CHECK(to_string(Verdict::Unavoidable) == "Unavoidable");
    CHECK(to_string(Verdict::WitnessSequence) == "WitnessSequence");
    CHECK(to_string(Verdict::NoWitness) == "NoWitness");
}
