#include "expramsey/errors.hpp"
#include "expramsey/tower.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>
#include <numeric>

using namespace expramsey;
using testing::nat;

namespace {

FactoredExponent fe(std::initializer_list<std::pair<unsigned long, Nat>> factors)
{
    FactoredExponent out;
    for (const auto& [p, beta] : factors)
        out *= FactoredExponent::prime_power(Nat(p), beta);
    return out;
}

CanonicalPower power(unsigned long base, FactoredExponent e, const Limits& limits = default_limits())
{
    return canonicalize(Nat(base), std::move(e), limits);
}

Nat pow2(unsigned long k)
{
    Nat out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
    return out;
}

// Maximal perfect-power exponent for every n <= limit, from brute-force powers c^k.
std::vector<unsigned> max_exponent_table(std::uint64_t limit)
{
    std::vector<unsigned> table(limit + 1, 1);
    for (std::uint64_t c = 2; c * c <= limit; ++c) {
        std::uint64_t v = c * c;
        for (unsigned k = 2; v <= limit; ++k, v *= c)
            table[v] = std::max(table[v], k);
    }
    return table;
}

std::uint64_t naive_pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    for (std::uint64_t i = 0; i < e; ++i)
        r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % m);
    return r;
}

} // namespace

TEST_CASE("perfect_power_root examples")
{
    CHECK(perfect_power_root(64) == std::pair<Nat, Nat>(2, 6));
    CHECK(perfect_power_root(2) == std::pair<Nat, Nat>(2, 1));
    CHECK(perfect_power_root(36) == std::pair<Nat, Nat>(6, 2));
    CHECK_THROWS_AS(perfect_power_root(1), InvalidArgument);
}

TEST_CASE("perfect_power_root agrees with a table of powers up to 2^20")
{
    const std::uint64_t limit = std::uint64_t{1} << 20;
    const auto table = max_exponent_table(limit);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        // Every perfect power, and every 7th number otherwise.
        if (table[n] == 1 && n % 7 != 0)
            continue;
        const auto [c, k] = perfect_power_root(nat(n));
        REQUIRE(k == table[n]);
        REQUIRE(testing::naive_pow(c, table[n]) == nat(n));
    }
}

TEST_CASE("canonicalize examples")
{
    auto p = power(4, fe({{3, 1}}));
    CHECK(p.root() == 2);
    CHECK(p.exponent() == fe({{2, 1}, {3, 1}}));

    auto q = power(5, {});
    CHECK(q.root() == 5);
    CHECK(q.exponent().is_one());

    auto s = power(27, fe({{2, 1}}));
    CHECK(s.root() == 3);
    CHECK(s.exponent() == fe({{2, 1}, {3, 1}}));

    CHECK(CanonicalPower::of(1).is_one());
    CHECK_THROWS_AS(canonicalize(Nat(0), {}), InvalidArgument);
}

TEST_CASE("eval_capped examples")
{
    CHECK(*eval_capped(power(2, fe({{2, 1}, {5, 1}})), 64) == 1024);
    CHECK(*eval_capped(power(3, fe({{2, 2}})), 64) == 81);
    CHECK_FALSE(eval_capped(power(2, fe({{2, 1000}})), 1024));
    CHECK_FALSE(eval_capped(power(2, fe({{2, 10}})), 1024));
    CHECK(eval_capped(power(2, fe({{2, 10}})), 1025));
}

TEST_CASE("CanonicalPower::of round trips and equality matches numeric equality")
{
    std::map<Nat, CanonicalPower> seen;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        auto p = CanonicalPower::of(nat(n));
        REQUIRE(*eval_capped(p, 64) == nat(n));
        seen.emplace(nat(n), p);
    }
    // Products of the form b^e collide exactly when their values do.
    std::map<Nat, std::vector<CanonicalPower>> by_value;
    for (unsigned long b = 2; b <= 40; ++b)
        for (unsigned long e = 1; e <= 12; ++e) {
            auto p = canonicalize(Nat(b), FactoredExponent::of(Nat(e)));
            by_value[testing::naive_pow(Nat(b), e)].push_back(p);
        }
    std::vector<std::pair<Nat, CanonicalPower>> flat;
    for (const auto& [v, ps] : by_value)
        for (const auto& p : ps)
            flat.emplace_back(v, p);
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i; j < flat.size(); j += 7)
            REQUIRE((flat[i].first == flat[j].first) == (flat[i].second == flat[j].second));
}

TEST_CASE("compare examples")
{
    auto c = compare(power(2, fe({{2, 2}, {5, 2}})), power(3, fe({{3, 2}, {7, 1}})));
    CHECK(c.order == std::strong_ordering::greater);
    auto p = power(7, fe({{11, 3}}));
    CHECK(compare(p, p).order == std::strong_ordering::equal);
    CHECK(compare(p, p).path == CmpPath::Structural);
    CHECK(cmp(power(2, fe({{2, 1}, {3, 1}})), power(3, fe({{2, 2}}))) == std::strong_ordering::less);
}

TEST_CASE("compare matches exact order on random evaluable pairs, on every path")
{
    Limits tiny;
    tiny.value_bit_cap = 8; // forces the log-bound path for nearly everything
    std::vector<std::pair<Nat, CanonicalPower>> pool;
    for (int i = 0; i < 200; ++i) {
        const auto b = testing::uniform(2, 60);
        const auto e = testing::uniform(1, 90);
        pool.emplace_back(testing::naive_pow(nat(b), e), canonicalize(nat(b), FactoredExponent::of(nat(e))));
    }
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            const int truth = ::cmp(pool[i].first, pool[j].first);
            const auto want = truth < 0 ? std::strong_ordering::less
                : truth > 0             ? std::strong_ordering::greater
                                        : std::strong_ordering::equal;
            REQUIRE(cmp(pool[i].second, pool[j].second) == want);
            REQUIRE(cmp(pool[i].second, pool[j].second, tiny) == want);
        }
}

TEST_CASE("symbolic comparison against rational bounds on log2 3")
{
    // 3/2 < log2 3 < 8/5, so 3^E against 2^(3E/2) and 2^(8E/5) with E = 10 * 2^5000.
    const auto e = fe({{2, 5001}, {5, 1}});
    const auto three = power(3, e);
    const auto lower = power(2, fe({{2, 5000}, {3, 1}, {5, 1}}));
    const auto upper = power(2, fe({{2, 5004}}));
    auto a = compare(three, lower);
    CHECK(a.order == std::strong_ordering::greater);
    CHECK(a.path == CmpPath::LogBounds);
    CHECK(compare(three, upper).order == std::strong_ordering::less);
    CHECK(compare(upper, three).order == std::strong_ordering::greater);

    // Exponents far beyond the direct cap take the log-of-log route.
    const Nat huge = pow2(21);
    CHECK(cmp(power(3, fe({{2, huge}})), power(2, fe({{2, huge - 1}, {3, 1}}))) == std::strong_ordering::greater);
    CHECK(cmp(power(3, fe({{2, huge}})), power(2, fe({{2, huge + 4}}))) == std::strong_ordering::less);
}

TEST_CASE("compare_products")
{
    std::vector<CanonicalPower> lhs{power(2, fe({{2, 1}})), power(3, {})};  // 4 * 3
    std::vector<CanonicalPower> rhs{power(2, fe({{2, 1}, {3, 1}}))};       // 64
    CHECK(compare_products(lhs, rhs).order == std::strong_ordering::less);
    std::vector<CanonicalPower> twelve{CanonicalPower::of(12)};
    CHECK(compare_products(lhs, twelve).order == std::strong_ordering::equal);

    const Nat huge = pow2(21);
    std::vector<CanonicalPower> big{power(3, fe({{2, huge}})), power(5, {})};
    std::vector<CanonicalPower> bigger{power(3, fe({{2, huge}})), power(7, {})};
    CHECK(compare_products(big, bigger).order == std::strong_ordering::less);
    CHECK(compare_products(big, big).order == std::strong_ordering::equal);
    // 2^(2^H) * 2^(2^H) = 2^(2^(H+1)), but nothing cancels.
    std::vector<CanonicalPower> twice{power(2, fe({{2, huge}})), power(2, fe({{2, huge}}))};
    std::vector<CanonicalPower> once{power(2, fe({{2, huge + 1}}))};
    CHECK_THROWS_AS(compare_products(twice, once), CapExceeded);
}

TEST_CASE("carmichael examples")
{
    CHECK(carmichael(10) == 4);
    CHECK(carmichael(1) == 1);
    CHECK(carmichael(12) == 2);
    CHECK(carmichael(8) == 2);
    CHECK(carmichael(16) == 4);
    CHECK(carmichael(9) == 6);
}

TEST_CASE("carmichael divides the totient")
{
    const unsigned long limit = 100000;
    std::vector<unsigned long> phi(limit + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (unsigned long p = 2; p <= limit; ++p)
        if (phi[p] == p)
            for (unsigned long q = p; q <= limit; q += p)
                phi[q] -= phi[q] / p;
    for (unsigned long m = 1; m <= limit; ++m) {
        const Nat l = carmichael(Nat(m));
        REQUIRE(phi[m] % l.get_ui() == 0);
    }
}

TEST_CASE("carmichael is the exponent of the unit group")
{
    for (std::uint64_t m = 2; m <= 600; ++m) {
        const auto l = carmichael(nat(m)).get_ui();
        std::uint64_t order_lcm = 1;
        for (std::uint64_t b = 1; b < m; ++b) {
            if (std::gcd(b, m) != 1)
                continue;
            REQUIRE(naive_pow_mod(b, l, m) == 1);
            std::uint64_t order = 1;
            for (std::uint64_t v = b % m; v != 1; v = v * b % m)
                ++order;
            order_lcm = std::lcm(order_lcm, order);
        }
        REQUIRE(order_lcm == l);
    }
}

TEST_CASE("pow_mod examples")
{
    CHECK(pow_mod(2, fe({{2, 1}, {5, 1}}), 1000) == 24);
    CHECK(pow_mod(7, {}, 5) == 2);
    CHECK(pow_mod(5, fe({{3, 4}}), 1) == 0);
    // 3^(2^80) is 1 mod 4 and at least 1, so 2^(3^(2^80)) sits on the cycle 2,4,8,6 at position 1.
    const auto e = fe({{3, pow2(80)}});
    CHECK(pow_mod(2, e, 10) == 2);
    CHECK(pow_mod(2, e, 10, default_limits(), PowModRoute::ForceLift) == 2);
}

TEST_CASE("pow_mod direct and lifted routes agree")
{
    const unsigned long primes[] = {2, 3, 5, 7, 11, 13};
    for (int trial = 0; trial < 2000; ++trial) {
        FactoredExponent e;
        const auto terms = testing::uniform(0, 3);
        for (std::uint64_t i = 0; i < terms; ++i)
            e *= FactoredExponent::prime_power(Nat(primes[testing::uniform(0, 5)]), nat(testing::uniform(1, 6)));
        const Nat base = nat(testing::uniform(1, 5000));
        const Nat m = nat(testing::uniform(1, 1'000'000));
        const Nat direct = pow_mod(base, e, m);
        const Nat lifted = pow_mod(base, e, m, default_limits(), PowModRoute::ForceLift);
        REQUIRE(direct == lifted);
        const Nat value = *e.value(64);
        Nat expect;
        mpz_powm(expect.get_mpz_t(), base.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
        REQUIRE(direct == expect);
    }
}

TEST_CASE("FactoredExponent value and mod")
{
    const auto e = fe({{2, 3}, {3, 2}, {7, 1}});
    CHECK(*e.value(64) == 504);
    CHECK(e.mod(100) == 4);
    CHECK(e.to_string() == "2^3*3^2*7");
    CHECK(FactoredExponent().to_string() == "1");
    CHECK(FactoredExponent::of(504) == e);
    CHECK(e.pow(2) == fe({{2, 6}, {3, 4}, {7, 2}}));
    CHECK(e.pow(0).is_one());
}

TEST_CASE("JSON round trip")
{
    const auto p = power(12, fe({{2, 2}}));
    const auto j = to_json(p);
    CHECK(j["root"] == "12");
    CHECK(j["decimal"] == "20736");
    CHECK(canonical_power_from_json(j) == p);

    const auto big = power(5, fe({{2, 100}}));
    CHECK_FALSE(to_json(big).contains("decimal"));
    CHECK(canonical_power_from_json(to_json(big)) == big);

    nlohmann::json bad = {{"root", "4"}, {"exp", nlohmann::json::object()}};
    CHECK_THROWS_AS(canonical_power_from_json(bad), InvalidArgument);
}

TEST_CASE("multiplicity cap")
{
    Limits l;
    l.lambda_multiplicity_bit_cap = 8;
    CHECK_NOTHROW(canonicalize(3, fe({{2, 255}}), l));
    CHECK_THROWS_AS(canonicalize(3, fe({{2, 256}}), l), CapExceeded);
}
