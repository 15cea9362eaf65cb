#include "expramsey/tower.hpp"

#include "expramsey/errors.hpp"
#include "interval.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace expramsey {

using detail::Interval;

// ---------------------------------------------------------------------------
// FactoredExponent

FactoredExponent FactoredExponent::of(const Nat& n, const Limits& limits)
{
    if (n < 1)
        throw InvalidArgument("exponent must be at least 1");
    return from_factorization(factorize(n, limits.factorization_trial_bound));
}

FactoredExponent FactoredExponent::prime_power(Nat prime, Nat multiplicity)
{
    FactoredExponent e;
    if (multiplicity > 0)
        e.factors_.emplace(std::move(prime), std::move(multiplicity));
    return e;
}

FactoredExponent FactoredExponent::from_factorization(const Factorization& factors)
{
    FactoredExponent e;
    for (const auto& [p, k] : factors)
        if (k > 0)
            e.factors_[p] += k;
    return e;
}

FactoredExponent& FactoredExponent::operator*=(const FactoredExponent& other)
{
    for (const auto& [p, k] : other.factors_)
        factors_[p] += k;
    return *this;
}

FactoredExponent FactoredExponent::pow(const Nat& k) const
{
    FactoredExponent e;
    if (k == 0)
        return e;
    for (const auto& [p, beta] : factors_)
        e.factors_.emplace(p, beta * k);
    return e;
}

std::optional<Nat> FactoredExponent::value(std::size_t max_bits) const
{
    // 2^lower <= E, so lower >= max_bits already rules E out.
    Nat lower = 0;
    for (const auto& [p, beta] : factors_)
        lower += beta * Nat(bit_length(p) - 1);
    if (lower >= max_bits)
        return std::nullopt;

    Nat result = 1;
    for (const auto& [p, beta] : factors_) {
        Nat term;
        mpz_pow_ui(term.get_mpz_t(), p.get_mpz_t(), beta.get_ui());
        result *= term;
    }
    if (bit_length(result) > max_bits)
        return std::nullopt;
    return result;
}

Nat FactoredExponent::mod(const Nat& m) const
{
    if (m < 1)
        throw InvalidArgument("modulus must be at least 1");
    Nat result = 1;
    result %= m;
    for (const auto& [p, beta] : factors_) {
        Nat term;
        mpz_powm(term.get_mpz_t(), p.get_mpz_t(), beta.get_mpz_t(), m.get_mpz_t());
        result = (result * term) % m;
    }
    return result;
}

void FactoredExponent::check_multiplicity_cap(const Limits& limits) const
{
    for (const auto& [p, beta] : factors_)
        if (bit_length(beta) > limits.lambda_multiplicity_bit_cap)
            throw CapExceeded("multiplicity of prime " + to_decimal(p) + " has "
                + std::to_string(bit_length(beta)) + " bits, over the cap of "
                + std::to_string(limits.lambda_multiplicity_bit_cap));
}

std::string FactoredExponent::to_string() const
{
    if (factors_.empty())
        return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, beta] : factors_) {
        if (!first)
            out << '*';
        first = false;
        out << to_decimal(p);
        if (beta != 1)
            out << '^' << to_decimal(beta);
    }
    return out.str();
}

bool structural_less(const FactoredExponent& a, const FactoredExponent& b)
{
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(),
        b.factors_.begin(), b.factors_.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first)
                return x.first < y.first;
            return x.second < y.second;
        });
}

// ---------------------------------------------------------------------------
// CanonicalPower

namespace {

bool is_small_prime(unsigned long q)
{
    if (q < 2)
        return false;
    for (unsigned long d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

} // namespace

std::pair<Nat, Nat> perfect_power_root(const Nat& n)
{
    if (n < 2)
        throw InvalidArgument("perfect_power_root expects n >= 2");
    Nat c = n;
    Nat k = 1;
    // A q-th root >= 2 needs c >= 2^q, i.e. q < bit_length(c). Extracting prime
    // roots repeatedly reaches the maximal k whatever order the primes come in.
    for (unsigned long q = 2; q < bit_length(c); ++q) {
        if (!is_small_prime(q))
            continue;
        while (q < bit_length(c)) {
            auto root = exact_root(c, q);
            if (!root)
                break;
            c = std::move(*root);
            k *= q;
        }
    }
    return {c, k};
}

CanonicalPower canonicalize(const Nat& base, FactoredExponent exponent, const Limits& limits)
{
    if (base == 1 && exponent.is_one())
        return CanonicalPower();
    if (base < 2)
        throw InvalidArgument("power base must be at least 2 (got " + to_decimal(base) + ")");
    auto [root, k] = perfect_power_root(base);
    if (k > 1)
        exponent *= FactoredExponent::of(k, limits);
    exponent.check_multiplicity_cap(limits);
    return CanonicalPower(std::move(root), std::move(exponent));
}

CanonicalPower CanonicalPower::of(const Nat& n, const Limits& limits)
{
    if (n == 1)
        return CanonicalPower();
    return canonicalize(n, FactoredExponent(), limits);
}

std::string CanonicalPower::to_string() const
{
    if (exponent_.is_one())
        return to_decimal(root_);
    return to_decimal(root_) + "^(" + exponent_.to_string() + ")";
}

bool StructuralLess::operator()(const CanonicalPower& a, const CanonicalPower& b) const
{
    if (a.root() != b.root())
        return a.root() < b.root();
    return structural_less(a.exponent(), b.exponent());
}

std::optional<Nat> eval_capped(const CanonicalPower& p, std::size_t max_bits)
{
    if (p.is_one())
        return max_bits >= 1 ? std::optional<Nat>(1) : std::nullopt;
    // root >= 2^(b-1) with b = bit_length(root), so root^E >= 2^(E(b-1)).
    const Nat floor_log_root = bit_length(p.root()) - 1;
    auto e = p.exponent().value(max_bits);
    if (!e || *e * floor_log_root >= max_bits)
        return std::nullopt;
    Nat result;
    mpz_pow_ui(result.get_mpz_t(), p.root().get_mpz_t(), e->get_ui());
    if (bit_length(result) > max_bits)
        return std::nullopt;
    return result;
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

constexpr mpfr_prec_t kFractionalBits = 64;

struct LogForm {
    const CanonicalPower* power;
    std::optional<Nat> exponent; // set when the exponent fits the direct cap
};

// Enclosure of log2(prod root_i^E_i) = sum E_i log2(root_i).
Interval single_level(const std::vector<LogForm>& side, mpfr_prec_t precision)
{
    Interval sum = Interval::zero(precision);
    for (const auto& f : side) {
        Interval term = Interval::of(*f.exponent, precision);
        term.mul_nonneg(Interval::log2_of(f.power->root(), precision));
        sum.add(term);
    }
    return sum;
}

// Enclosure of log2(log2(root^E)) = sum beta_p log2(p) + log2(log2(root)).
Interval double_level(const CanonicalPower& p, mpfr_prec_t precision)
{
    Interval sum = Interval::log2_of(p.root(), precision).log2();
    for (const auto& [prime, beta] : p.exponent().factors()) {
        Interval term = Interval::of(beta, precision);
        term.mul_nonneg(Interval::log2_of(prime, precision));
        sum.add(term);
    }
    return sum;
}

std::size_t single_level_magnitude(const std::vector<LogForm>& side)
{
    std::size_t bits = 0;
    for (const auto& f : side)
        bits = std::max(bits, bit_length(*f.exponent) + bit_length(bit_length(f.power->root())));
    return bits + bit_length(side.size()) + 1;
}

std::size_t double_level_magnitude(const CanonicalPower& p)
{
    Nat bound = bit_length(bit_length(p.root()));
    for (const auto& [prime, beta] : p.exponent().factors())
        bound += beta * Nat(bit_length(prime));
    return bit_length(bound) + 1;
}

template <typename Enclose>
std::strong_ordering refine(std::size_t magnitude, Enclose&& enclose, const char* what)
{
    const auto start = static_cast<mpfr_prec_t>(magnitude) + kFractionalBits;
    const mpfr_prec_t limit = start * 8 + (mpfr_prec_t{1} << 16);
    for (mpfr_prec_t precision = start; precision <= limit; precision *= 2) {
        auto [a, b] = enclose(precision);
        if (a.strictly_below(b))
            return std::strong_ordering::less;
        if (b.strictly_below(a))
            return std::strong_ordering::greater;
    }
    throw CapExceeded(std::string("log bounds failed to separate ") + what
        + " within the precision limit");
}

Comparison compare_log(std::vector<LogForm> lhs, std::vector<LogForm> rhs, const Limits& limits)
{
    bool direct = true;
    for (auto* side : {&lhs, &rhs})
        for (auto& f : *side) {
            f.exponent = f.power->exponent().value(limits.exponent_direct_bit_cap);
            direct = direct && f.exponent.has_value();
        }

    if (direct) {
        const std::size_t magnitude = std::max(single_level_magnitude(lhs), single_level_magnitude(rhs));
        auto order = refine(magnitude, [&](mpfr_prec_t precision) {
            return std::pair{single_level(lhs, precision), single_level(rhs, precision)};
        }, "products");
        return {order, CmpPath::LogBounds};
    }

    // log2 log2 of a product is log2 of sum_i 2^{log2 log2 p_i}.
    std::size_t magnitude = 0;
    for (const auto* side : {&lhs, &rhs})
        for (const auto& f : *side)
            magnitude = std::max(magnitude, double_level_magnitude(*f.power) + bit_length(side->size()));
    auto order = refine(magnitude, [&](mpfr_prec_t precision) {
        auto enclose = [&](const std::vector<LogForm>& side) {
            std::vector<Interval> terms;
            for (const auto& f : side)
                terms.push_back(double_level(*f.power, precision));
            return Interval::log2_sum_exp2(terms);
        };
        return std::pair{enclose(lhs), enclose(rhs)};
    }, "powers");
    return {order, CmpPath::LogBounds};
}

} // namespace

Comparison compare(const CanonicalPower& p, const CanonicalPower& q, const Limits& limits)
{
    if (p == q)
        return {std::strong_ordering::equal, CmpPath::Structural};
    if (p.is_one())
        return {std::strong_ordering::less, CmpPath::Structural};
    if (q.is_one())
        return {std::strong_ordering::greater, CmpPath::Structural};

    auto vp = eval_capped(p, limits.value_bit_cap);
    auto vq = eval_capped(q, limits.value_bit_cap);
    if (vp && vq) {
        // Distinct canonical forms never denote the same integer.
        return {*vp < *vq ? std::strong_ordering::less : std::strong_ordering::greater, CmpPath::Exact};
    }
    return compare_log({LogForm{&p, {}}}, {LogForm{&q, {}}}, limits);
}

Comparison compare_products(std::span<const CanonicalPower> lhs,
    std::span<const CanonicalPower> rhs, const Limits& limits)
{
    // Factors present on both sides cancel; equal huge factors would otherwise
    // swamp the difference in the log bounds.
    std::vector<bool> cancelled(rhs.size(), false);
    std::vector<LogForm> left;
    std::vector<LogForm> right;
    for (const auto& p : lhs) {
        if (p.is_one())
            continue;
        bool matched = false;
        for (std::size_t j = 0; j < rhs.size() && !matched; ++j)
            if (!cancelled[j] && rhs[j] == p)
                cancelled[j] = matched = true;
        if (!matched)
            left.push_back({&p, {}});
    }
    for (std::size_t j = 0; j < rhs.size(); ++j)
        if (!cancelled[j] && !rhs[j].is_one())
            right.push_back({&rhs[j], {}});

    if (left.empty() || right.empty()) {
        if (left.empty() && right.empty())
            return {std::strong_ordering::equal, CmpPath::Structural};
        return {left.empty() ? std::strong_ordering::less : std::strong_ordering::greater,
            CmpPath::Structural};
    }
    if (left.size() == 1 && right.size() == 1)
        return compare(*left.front().power, *right.front().power, limits);

    auto product = [&](const std::vector<LogForm>& side) -> std::optional<Nat> {
        Nat result = 1;
        for (const auto& f : side) {
            auto v = eval_capped(*f.power, limits.value_bit_cap);
            if (!v)
                return std::nullopt;
            result *= *v;
        }
        return result;
    };
    auto a = product(left);
    auto b = product(right);
    if (a && b)
        return {mpz_cmp(a->get_mpz_t(), b->get_mpz_t()) <=> 0, CmpPath::Exact};
    return compare_log(std::move(left), std::move(right), limits);
}

// ---------------------------------------------------------------------------
// Modular arithmetic

namespace {

Nat lcm(const Nat& a, const Nat& b)
{
    Nat out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Nat carmichael_of(const Factorization& factors)
{
    Nat result = 1;
    for (const auto& [p, k] : factors) {
        Nat part;
        if (p == 2) {
            if (k == 1)
                part = 1;
            else if (k == 2)
                part = 2;
            else
                part = pow(Nat(2), k - 2);
        } else {
            part = pow(p, k - 1) * (p - 1);
        }
        result = lcm(result, part);
    }
    return result;
}

Nat powm(const Nat& base, const Nat& e, const Nat& m)
{
    Nat out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return out;
}

} // namespace

Nat carmichael(const Nat& m, const Limits& limits)
{
    if (m < 1)
        throw InvalidArgument("carmichael expects m >= 1");
    return carmichael_of(factorize(m, limits.factorization_trial_bound));
}

Nat pow_mod(const Nat& base, const FactoredExponent& exponent, const Nat& m,
    const Limits& limits, PowModRoute route)
{
    if (m < 1)
        throw InvalidArgument("modulus must be at least 1");
    if (base < 0)
        throw InvalidArgument("base must be nonnegative");
    if (m == 1)
        return 0;
    const Nat b = base % m;

    if (route == PowModRoute::Auto)
        if (auto e = exponent.value(limits.exponent_direct_bit_cap))
            return powm(b, *e, m);

    // Generalized Euler reduction: for E, E' >= k_max (the largest prime-power
    // exponent of m) and E = E' (mod lambda(m)), b^E = b^E' (mod m). The lift
    // is the least multiple of lambda(m) that is >= k_max.
    const Factorization factors = factorize(m, limits.factorization_trial_bound);
    const Nat lambda = carmichael_of(factors);
    Nat k_max = 0;
    for (const auto& [p, k] : factors)
        k_max = std::max(k_max, k);
    const Nat lift = lambda * ((k_max + lambda - 1) / lambda);

    if (auto small = exponent.value(bit_length(lift)); small && *small < lift)
        return powm(b, *small, m);
    return powm(b, exponent.mod(lambda) + lift, m);
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json to_json(const CanonicalPower& p, const Limits& limits)
{
    nlohmann::ordered_json j;
    j["root"] = to_decimal(p.root());
    nlohmann::ordered_json exp = nlohmann::ordered_json::object();
    for (const auto& [prime, beta] : p.exponent().factors())
        exp[to_decimal(prime)] = to_decimal(beta);
    j["exp"] = std::move(exp);
    if (auto v = eval_capped(p, limits.value_bit_cap))
        j["decimal"] = to_decimal(*v);
    return j;
}

CanonicalPower canonical_power_from_json(const nlohmann::json& j, const Limits& limits)
{
    if (!j.is_object() || !j.contains("root") || !j.contains("exp"))
        throw InvalidArgument("canonical power JSON needs \"root\" and \"exp\"");
    const Nat root = parse_nat(j.at("root").get<std::string>());
    FactoredExponent exponent;
    for (const auto& [key, value] : j.at("exp").items()) {
        const Nat prime = parse_nat(key);
        const Nat beta = parse_nat(value.get<std::string>());
        if (beta < 1 || mpz_probab_prime_p(prime.get_mpz_t(), 30) == 0)
            throw InvalidArgument("exponent map entries must be prime -> multiplicity >= 1");
        exponent *= FactoredExponent::prime_power(prime, beta);
    }
    if (root != 1 && perfect_power_root(root).second != 1)
        throw InvalidArgument("root " + to_decimal(root) + " is a perfect power");
    CanonicalPower p = canonicalize(root, std::move(exponent), limits);
    if (j.contains("decimal")) {
        auto v = eval_capped(p, limits.value_bit_cap);
        if (!v || to_decimal(*v) != j.at("decimal").get<std::string>())
            throw InvalidArgument("\"decimal\" does not match root and exp");
    }
    return p;
}

} // namespace expramsey
