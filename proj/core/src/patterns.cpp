#include "expramsey/patterns.hpp"

#include "expramsey/errors.hpp"

#include <algorithm>
#include <sstream>

namespace expramsey {

// ---------------------------------------------------------------------------
// Sequence

namespace {

void require_increasing(const std::vector<Nat>& terms, const Nat& minimum, const char* side)
{
    if (terms.empty())
        throw InvalidArgument(std::string(side) + " sequence must be nonempty");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < minimum)
            throw InvalidArgument(std::string(side) + " sequence terms must be >= "
                + to_decimal(minimum) + " (got " + to_decimal(terms[i]) + ")");
        if (i > 0 && terms[i] <= terms[i - 1])
            throw InvalidArgument(std::string(side) + " sequence must be strictly increasing");
    }
}

} // namespace

Sequence Sequence::exponential(std::vector<Nat> terms)
{
    require_increasing(terms, 2, "exponential");
    return Sequence(std::move(terms));
}

Sequence Sequence::additive(std::vector<Nat> terms)
{
    require_increasing(terms, 1, "additive");
    return Sequence(std::move(terms));
}

const Nat& Sequence::at(std::size_t index) const
{
    if (index < 1 || index > terms_.size())
        throw InvalidArgument("sequence index " + std::to_string(index) + " out of range 1.."
            + std::to_string(terms_.size()));
    return terms_[index - 1];
}

Sequence Sequence::prefix(std::size_t length) const
{
    if (length < 1 || length > terms_.size())
        throw InvalidArgument("prefix length out of range");
    return Sequence({terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(length)});
}

Sequence Sequence::subsequence(std::span<const std::size_t> positions) const
{
    if (positions.empty())
        throw InvalidArgument("subsequence must be nonempty");
    std::vector<Nat> out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i > 0 && positions[i] <= positions[i - 1])
            throw InvalidArgument("subsequence positions must increase");
        out.push_back(at(positions[i]));
    }
    return Sequence(std::move(out));
}

std::string Sequence::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0)
            out += ',';
        out += to_decimal(terms_[i]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Bounds and Phi

std::optional<Nat> Bound::as_nat(std::size_t max_bits) const
{
    if (const Nat* n = std::get_if<Nat>(&value_))
        return bit_length(*n) <= max_bits ? std::optional<Nat>(*n) : std::nullopt;
    return eval_capped(std::get<CanonicalPower>(value_), max_bits);
}

bool Bound::admits(const Nat& lambda, const Limits& limits) const
{
    if (const Nat* n = std::get_if<Nat>(&value_))
        return lambda <= *n;
    // Canonical powers are >= 1.
    if (lambda <= 1)
        return true;
    return cmp(CanonicalPower::of(lambda, limits), std::get<CanonicalPower>(value_), limits) <= 0;
}

CanonicalPower Bound::as_power(const Limits& limits) const
{
    if (const Nat* n = std::get_if<Nat>(&value_)) {
        if (*n == 0)
            throw InvalidArgument("the bound 0 has no canonical power form");
        return CanonicalPower::of(*n, limits);
    }
    return std::get<CanonicalPower>(value_);
}

std::string Bound::to_string() const
{
    if (const Nat* n = std::get_if<Nat>(&value_))
        return to_decimal(*n);
    return std::get<CanonicalPower>(value_).to_string();
}

Bound tower(const Nat& k, std::size_t height, const Limits& limits)
{
    if (height < 1)
        throw InvalidArgument("tower height must be at least 1");
    if (k <= 1 || height == 1)
        return Bound(k);
    // T_h = k^{T_{h-1}} and T_{h-1} = k^{T_{h-2}}, so T_h is k raised to
    // factor(k)^{T_{h-2}}: only the tower two levels down is materialized.
    const FactoredExponent base = FactoredExponent::of(k, limits);
    Nat two_below = 1; // T_{h-2}
    Nat one_below = k; // T_{h-1}, when needed later
    for (std::size_t h = 2;; ++h) {
        CanonicalPower next = canonicalize(k, base.pow(two_below), limits);
        if (h == height) {
            auto value = eval_capped(next, limits.lambda_multiplicity_bit_cap);
            return value ? Bound(std::move(*value)) : Bound(std::move(next));
        }
        two_below = std::move(one_below);
        if (h + 2 <= height) {
            auto value = eval_capped(next, limits.lambda_multiplicity_bit_cap);
            if (!value)
                throw CapExceeded("tower of " + to_decimal(k) + " of height " + std::to_string(height)
                    + " needs an exponent wider than the multiplicity cap");
            one_below = std::move(*value);
        }
    }
}

Bound PhiSpec::bound(std::size_t t, const Nat& x, const Limits& limits) const
{
    if (t < 2)
        throw InvalidArgument("Phi is indexed from 2");
    return std::visit([&](const auto& rule) -> Bound {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Constant>) {
            return rule.value;
        } else if constexpr (std::is_same_v<R, TowerHeight>) {
            return tower(x, t - 1 + rule.offset, limits);
        } else if constexpr (std::is_same_v<R, Table>) {
            auto it = rule.values.find({t, x});
            if (it == rule.values.end())
                throw InvalidArgument("Phi table has no entry for f_" + std::to_string(t) + "("
                    + to_decimal(x) + ")");
            return it->second;
        } else if constexpr (std::is_same_v<R, PerIndexCaps>) {
            if (t - 2 >= rule.caps.size())
                throw InvalidArgument("no per-index cap given for lambda_" + std::to_string(t));
            return rule.caps[t - 2];
        } else {
            return rule.fn(t, x);
        }
    }, rule_);
}

Nat PhiSpec::bound_nat(std::size_t t, const Nat& x, const Limits& limits) const
{
    auto value = bound(t, x, limits).as_nat(limits.lambda_multiplicity_bit_cap);
    if (!value)
        throw CapExceeded("f_" + std::to_string(t) + "(" + to_decimal(x)
            + ") is wider than the multiplicity cap");
    return *value;
}

std::string PhiSpec::descriptor() const
{
    std::string out = "N=" + to_decimal(n_cap_) + ";";
    std::visit([&](const auto& rule) {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, Constant>) {
            out += "const:" + to_decimal(rule.value);
        } else if constexpr (std::is_same_v<R, TowerHeight>) {
            out += "tower:" + std::to_string(rule.offset);
        } else if constexpr (std::is_same_v<R, Table>) {
            out += "table:" + std::to_string(rule.values.size());
        } else if constexpr (std::is_same_v<R, PerIndexCaps>) {
            out += "caps:";
            for (std::size_t i = 0; i < rule.caps.size(); ++i)
                out += (i ? "," : "") + to_decimal(rule.caps[i]);
        } else {
            out += "fn:" + rule.name;
        }
    }, rule_);
    return out;
}

// ---------------------------------------------------------------------------
// PatternSet

bool PatternSet::insert(PatternElement element)
{
    auto key = element.value;
    return elements_.emplace(std::move(key), std::move(element)).second;
}

void PatternSet::merge(const PatternSet& other)
{
    for (const auto& [value, element] : other.elements_)
        elements_.emplace(value, element);
}

bool PatternSet::contains(const CanonicalPower& value) const
{
    return elements_.count(value) != 0;
}

const PatternElement* PatternSet::find(const CanonicalPower& value) const
{
    auto it = elements_.find(value);
    return it == elements_.end() ? nullptr : &it->second;
}

std::vector<const PatternElement*> PatternSet::sorted(const Limits& limits) const
{
    struct Entry {
        const PatternElement* element;
        std::optional<Nat> value;
    };
    std::vector<Entry> entries;
    entries.reserve(elements_.size());
    for (const auto& [value, element] : elements_)
        entries.push_back({&element, eval_capped(value, limits.value_bit_cap)});
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        if (a.value && b.value)
            return *a.value < *b.value;
        return cmp(a.element->value, b.element->value, limits) < 0;
    });
    std::vector<const PatternElement*> out;
    out.reserve(entries.size());
    for (const auto& e : entries)
        out.push_back(e.element);
    return out;
}

std::vector<CanonicalPower> PatternSet::values() const
{
    std::vector<CanonicalPower> out;
    out.reserve(elements_.size());
    for (const auto& [value, element] : elements_)
        out.push_back(value);
    return out;
}

bool PatternSet::subset_of(const PatternSet& other) const
{
    return std::all_of(elements_.begin(), elements_.end(),
        [&](const auto& kv) { return other.contains(kv.first); });
}

bool operator==(const PatternSet& a, const PatternSet& b)
{
    return a.size() == b.size() && a.subset_of(b);
}

WeightFn WeightFn::constant(Nat c)
{
    return {"const:" + to_decimal(c), [c](std::span<const Nat>) { return c; }};
}

WeightFn WeightFn::size_plus_one()
{
    return {"size+1", [](std::span<const Nat> s) { return Nat(s.size() + 1); }};
}

// ---------------------------------------------------------------------------
// Generators

namespace {

using Box = std::vector<std::vector<Nat>>;

Nat box_cardinality(const Box& box)
{
    Nat n = 1;
    for (const auto& choices : box)
        n *= choices.size();
    return n;
}

void charge(Nat& used, const Nat& amount, const Limits& limits, const char* what)
{
    used += amount;
    if (used > Nat(std::to_string(limits.enumeration_budget)))
        throw EnumerationBudgetExceeded(std::string(what) + " needs more than "
            + std::to_string(limits.enumeration_budget) + " enumeration steps");
}

// Lexicographic odometer over the product of the choice lists.
template <typename Visit>
void for_each_in_box(const Box& box, Visit&& visit)
{
    std::vector<std::size_t> index(box.size(), 0);
    std::vector<Nat> point(box.size());
    for (std::size_t j = 0; j < box.size(); ++j) {
        if (box[j].empty())
            return;
        point[j] = box[j][0];
    }
    while (true) {
        visit(static_cast<const std::vector<Nat>&>(point));
        std::size_t j = box.size();
        while (j > 0) {
            --j;
            if (++index[j] < box[j].size()) {
                point[j] = box[j][index[j]];
                break;
            }
            index[j] = 0;
            point[j] = box[j][0];
            if (j == 0)
                return;
        }
        if (box.empty())
            return;
    }
}

Box range_box(const std::vector<Nat>& caps)
{
    Box box;
    box.reserve(caps.size());
    for (const auto& cap : caps) {
        std::vector<Nat> choices;
        for (Nat v = 0; v <= cap; ++v)
            choices.push_back(v);
        box.push_back(std::move(choices));
    }
    return box;
}

std::vector<FactoredExponent> factor_terms(const Sequence& a, std::size_t count, const Limits& limits)
{
    std::vector<FactoredExponent> out;
    out.reserve(count);
    for (std::size_t t = 1; t <= count; ++t)
        out.push_back(FactoredExponent::of(a.at(t), limits));
    return out;
}

// prod_t a_t^lambda_t in factored form.
FactoredExponent exponent_of(const std::vector<FactoredExponent>& factored_terms,
    const std::vector<Nat>& lambdas)
{
    FactoredExponent e;
    for (std::size_t t = 0; t < lambdas.size(); ++t)
        if (lambdas[t] != 0)
            e *= factored_terms[t].pow(lambdas[t]);
    return e;
}

PatternElement make_element(const Sequence& a, std::size_t level,
    const std::vector<FactoredExponent>& factored_terms, const std::vector<Nat>& lambdas,
    const Limits& limits)
{
    return {canonicalize(a.at(level), exponent_of(factored_terms, lambdas), limits), level, lambdas};
}

// Lambda choice sets for EXP: Lambda_t = {0} u {prod_{s<t} a_s^lambda_s : lambda in the
// level-t box}, since e_t = a_t^lambda_t ranges over EXP(a_1..a_t) u {1}.
Box exp_lambda_choices(std::size_t upto,
    const std::vector<FactoredExponent>& factored_terms, const Limits& limits, Nat& used)
{
    Box choices;
    for (std::size_t t = 1; t <= upto; ++t) {
        charge(used, box_cardinality(choices), limits, "EXP level");
        std::set<Nat> lambda_t{Nat(0)};
        for_each_in_box(choices, [&](const std::vector<Nat>& lambdas) {
            auto value = exponent_of(factored_terms, lambdas).value(limits.lambda_multiplicity_bit_cap);
            if (!value)
                throw CapExceeded("an exponent of EXP level " + std::to_string(t)
                    + " is wider than the multiplicity cap");
            lambda_t.insert(std::move(*value));
        });
        choices.emplace_back(lambda_t.begin(), lambda_t.end());
    }
    return choices;
}

void add_exp_level(PatternSet& out, const Sequence& a, std::size_t i, const Box& choices,
    const std::vector<FactoredExponent>& factored_terms, const Limits& limits, Nat& used)
{
    Box box(choices.begin(), choices.begin() + static_cast<std::ptrdiff_t>(i - 1));
    charge(used, box_cardinality(box), limits, "EXP level");
    for_each_in_box(box, [&](const std::vector<Nat>& lambdas) {
        out.insert(make_element(a, i, factored_terms, lambdas, limits));
    });
}

void check_level(const Sequence& a, std::size_t i)
{
    if (i < 1 || i > a.size())
        throw InvalidArgument("level " + std::to_string(i) + " out of range 1.." + std::to_string(a.size()));
}

} // namespace

PatternSet exp_level(const Sequence& a, std::size_t i, const Limits& limits)
{
    check_level(a, i);
    Nat used = 0;
    auto factored = factor_terms(a, i - 1, limits);
    auto choices = exp_lambda_choices(i - 1, factored, limits, used);
    PatternSet out;
    add_exp_level(out, a, i, choices, factored, limits, used);
    return out;
}

PatternSet fe_set(const Sequence& a, const Limits& limits)
{
    const std::size_t n = a.size();
    Nat used = 0;
    auto factored = factor_terms(a, n - 1, limits);
    auto choices = exp_lambda_choices(n - 1, factored, limits, used);
    PatternSet out;
    for (std::size_t i = 1; i <= n; ++i)
        add_exp_level(out, a, i, choices, factored, limits, used);
    return out;
}

PatternSet exp_prime_set(const Sequence& a, const Limits& limits)
{
    const std::size_t m = a.size();
    // table[l][r]: EXP' of the 0-based inclusive range [l, r].
    std::vector<std::vector<PatternSet>> table(m, std::vector<PatternSet>(m));
    std::map<Nat, FactoredExponent> root_factors;
    auto factors_of = [&](const Nat& root) -> const FactoredExponent& {
        auto it = root_factors.find(root);
        if (it == root_factors.end())
            it = root_factors.emplace(root, FactoredExponent::of(root, limits)).first;
        return it->second;
    };

    Nat used = 0;
    for (std::size_t l = 0; l < m; ++l)
        table[l][l].insert({CanonicalPower::of(a.terms()[l], limits), 0, {}});
    for (std::size_t length = 2; length <= m; ++length) {
        for (std::size_t l = 0; l + length <= m; ++l) {
            const std::size_t r = l + length - 1;
            PatternSet& out = table[l][r];
            for (std::size_t s = l; s < r; ++s) {
                const PatternSet& xs = table[l][s];
                const PatternSet& ys = table[s + 1][r];
                charge(used, Nat(xs.size()) * ys.size(), limits, "EXP'");
                for (const auto& x : xs.values()) {
                    // y^x = c^(F * x) where x = d^G; G must be a literal integer.
                    auto g = x.exponent().value(limits.lambda_multiplicity_bit_cap);
                    if (!g)
                        throw InnerExponentTooLarge("inner exponent " + x.to_string()
                            + " cannot be written out under the multiplicity cap");
                    const FactoredExponent x_factored = factors_of(x.root()).pow(*g);
                    for (const auto& y : ys.values())
                        out.insert({canonicalize(y.root(), y.exponent() * x_factored, limits), 0, {}});
                }
            }
        }
    }
    return table[0][m - 1];
}

namespace {

std::vector<Nat> bounded_caps(const Sequence& a, std::size_t count, const PhiSpec& phi, const Limits& limits)
{
    // caps[0] bounds lambda_1 by N; caps[t-1] = f_t(a_{t-1}) for t >= 2.
    std::vector<Nat> caps;
    for (std::size_t t = 1; t <= count; ++t)
        caps.push_back(t == 1 ? phi.n_cap() : phi.bound_nat(t, a.at(t - 1), limits));
    return caps;
}

void add_bounded_level(PatternSet& out, const Sequence& a, std::size_t i, const PhiSpec& phi,
    const std::vector<FactoredExponent>& factored, const Limits& limits, Nat& used)
{
    auto caps = bounded_caps(a, i - 1, phi, limits);
    Nat cardinality = 1;
    for (const auto& cap : caps)
        cardinality *= cap + 1;
    charge(used, cardinality, limits, "bounded EXP level");
    for_each_in_box(range_box(caps), [&](const std::vector<Nat>& lambdas) {
        out.insert(make_element(a, i, factored, lambdas, limits));
    });
}

} // namespace

PatternSet exp_bounded_level(const Sequence& a, std::size_t i, const PhiSpec& phi, const Limits& limits)
{
    check_level(a, i);
    Nat used = 0;
    auto factored = factor_terms(a, i - 1, limits);
    PatternSet out;
    add_bounded_level(out, a, i, phi, factored, limits, used);
    return out;
}

PatternSet fe_bounded_set(const Sequence& a, const PhiSpec& phi, const Limits& limits)
{
    Nat used = 0;
    auto factored = factor_terms(a, a.size() - 1, limits);
    PatternSet out;
    for (std::size_t i = 1; i <= a.size(); ++i)
        add_bounded_level(out, a, i, phi, factored, limits, used);
    return out;
}

bool contains_bounded(const PatternElement& v, const Sequence& a, const PhiSpec& phi, const Limits& limits)
{
    if (v.level < 1 || v.level > a.size() || v.lambdas.size() != v.level - 1)
        throw InvalidArgument("element carries no lambda vector over this sequence");
    for (std::size_t t = 1; t < v.level; ++t) {
        const Nat& lambda = v.lambdas[t - 1];
        if (lambda == 0)
            continue;
        if (t == 1) {
            if (lambda > phi.n_cap())
                return false;
        } else if (!phi.bound(t, a.at(t - 1), limits).admits(lambda, limits)) {
            return false;
        }
    }
    return true;
}

std::set<Nat> f_family(const Sequence& ap, const PhiSpec& phi, const Limits& limits)
{
    std::set<Nat> out;
    Nat used = 0;
    for (std::size_t k = 1; k <= ap.size(); ++k) {
        auto caps = bounded_caps(ap, k - 1, phi, limits);
        Nat cardinality = 1;
        for (const auto& cap : caps)
            cardinality *= cap + 1;
        charge(used, cardinality, limits, "F family");
        const Nat& a_k = ap.at(k);
        for_each_in_box(range_box(caps), [&](const std::vector<Nat>& lambdas) {
            Nat shift = 0;
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                shift += lambdas[i] * ap.terms()[i];
            if (shift + bit_length(a_k) > limits.value_bit_cap)
                throw CapExceeded("F family element wider than the value cap");
            Nat value;
            mpz_mul_2exp(value.get_mpz_t(), a_k.get_mpz_t(), shift.get_ui());
            out.insert(std::move(value));
        });
    }
    return out;
}

PatternSet fep_w_set(std::span<const Nat> x, const WeightFn& w, const Limits& limits)
{
    // Work over the reversed sequence a_j = x_{n+1-j}; then the weight bounding
    // the exponent of a_j is W({a_1, ..., a_{j-1}}).
    std::vector<Nat> reversed(x.rbegin(), x.rend());
    const Sequence a = Sequence::exponential(std::move(reversed));
    const std::size_t n = a.size();
    auto factored = factor_terms(a, n - 1, limits);

    std::vector<Nat> caps;
    for (std::size_t j = 1; j < n; ++j)
        caps.push_back(w(std::span<const Nat>(a.terms().data(), j - 1)));

    PatternSet out;
    Nat used = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Nat> level_caps(caps.begin(), caps.begin() + static_cast<std::ptrdiff_t>(k - 1));
        Nat cardinality = 1;
        for (const auto& cap : level_caps)
            cardinality *= cap + 1;
        charge(used, cardinality, limits, "FEP_W");
        for_each_in_box(range_box(level_caps), [&](const std::vector<Nat>& lambdas) {
            out.insert(make_element(a, k, factored, lambdas, limits));
        });
    }
    return out;
}

std::set<Nat> fs_set(std::span<const Nat> x, const Limits& limits)
{
    if (x.empty())
        throw InvalidArgument("finite sums need a nonempty list");
    std::set<Nat> distinct(x.begin(), x.end());
    if (distinct.size() != x.size())
        throw InvalidArgument("finite sums need distinct elements");
    if (*distinct.begin() < 1)
        throw InvalidArgument("finite sums need positive elements");

    std::set<Nat> sums;
    Nat used = 0;
    for (const auto& v : x) {
        charge(used, Nat(sums.size() + 1), limits, "finite sums");
        std::vector<Nat> extended;
        extended.reserve(sums.size() + 1);
        extended.push_back(v);
        for (const auto& s : sums)
            extended.push_back(s + v);
        sums.insert(extended.begin(), extended.end());
    }
    return sums;
}

PatternElement tower_build(const Sequence& a, std::size_t n, std::size_t m,
    std::span<const std::size_t> idx, const Limits& limits)
{
    if (n > a.size() || m >= n || m < 1)
        throw InvalidArgument("tower indices need n > m >= 1 within the sequence");
    if (idx.size() >= m)
        throw InvalidArgument("tower needs fewer than m inner indices");
    for (auto i : idx)
        if (i < 1 || i >= m)
            throw InvalidArgument("inner tower indices must lie in 1..m-1");

    // Evaluate a_{i_1}^(a_{i_2}^(...^a_{i_k})) right to left.
    Nat inner = 1;
    if (!idx.empty()) {
        inner = a.at(idx.back());
        for (std::size_t j = idx.size() - 1; j-- > 0;) {
            const Nat& base = a.at(idx[j]);
            if (!inner.fits_ulong_p() || Nat(bit_length(base) - 1) * inner >= limits.lambda_multiplicity_bit_cap)
                throw CapExceeded("inner tower exceeds the multiplicity cap");
            inner = pow(base, inner);
            if (bit_length(inner) > limits.lambda_multiplicity_bit_cap)
                throw CapExceeded("inner tower exceeds the multiplicity cap");
        }
    }

    std::vector<Nat> lambdas(n - 1, Nat(0));
    lambdas[m - 1] = inner;
    FactoredExponent exponent = FactoredExponent::of(a.at(m), limits).pow(inner);
    return {canonicalize(a.at(n), std::move(exponent), limits), n, std::move(lambdas)};
}

PhiSpec reduce_multivar_phi(Nat n_cap, std::vector<MultivarBound> bounds, const Limits& limits)
{
    std::map<std::size_t, std::function<Nat(std::span<const Nat>)>> by_index;
    for (auto& b : bounds) {
        if (b.index < 2)
            throw InvalidArgument("multivariable bounds are indexed from 2");
        by_index[b.index] = std::move(b.fn);
    }
    auto fn = [by_index = std::move(by_index), limits](std::size_t n, const Nat& t) -> Nat {
        auto it = by_index.find(n);
        if (it == by_index.end())
            throw InvalidArgument("no multivariable bound F_" + std::to_string(n));
        if (t < 1)
            return 0;
        const std::size_t arity = n - 1;
        Nat volume = 1;
        for (std::size_t j = 0; j < arity; ++j)
            volume *= t;
        if (volume > Nat(std::to_string(limits.enumeration_budget)))
            throw EnumerationBudgetExceeded("reducing F_" + std::to_string(n) + " at "
                + to_decimal(t) + " needs " + to_decimal(volume) + " evaluations");
        std::vector<Nat> point(arity, Nat(1));
        Nat best = it->second(point);
        while (true) {
            std::size_t j = arity;
            while (j > 0 && point[j - 1] == t)
                point[--j] = 1;
            if (j == 0)
                return best;
            ++point[j - 1];
            best = std::max(best, it->second(point));
        }
    };
    return {std::move(n_cap), PhiSpec::Function{"reduced", std::move(fn)}};
}

LiftPair lift_pair(const Sequence& ap, const PhiSpec& phi, const Limits& limits)
{
    std::vector<Nat> lifted;
    for (const auto& v : ap.terms()) {
        if (v >= limits.value_bit_cap)
            throw CapExceeded("2^" + to_decimal(v) + " exceeds the value cap");
        Nat p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, v.get_ui());
        lifted.push_back(std::move(p));
    }
    PatternSet image;
    for (const auto& x : f_family(ap, phi, limits))
        image.insert({canonicalize(2, FactoredExponent::of(x, limits), limits), 0, {}});
    return {Sequence::exponential(std::move(lifted)), std::move(image)};
}

PhiSpec phi_from_weight(std::span<const Nat> terms, const WeightFn& w)
{
    std::vector<Nat> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end());
    Nat n_cap = w(std::span<const Nat>());
    auto fn = [sorted, w](std::size_t n, const Nat& t) -> Nat {
        std::vector<Nat> eligible;
        for (const auto& v : sorted)
            if (v <= t)
                eligible.push_back(v);
        if (eligible.size() >= 63)
            throw EnumerationBudgetExceeded("too many terms for the weight maximum");
        Nat best = 0;
        const std::uint64_t subsets = std::uint64_t{1} << eligible.size();
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) > n - 1)
                continue;
            std::vector<Nat> subset;
            for (std::size_t j = 0; j < eligible.size(); ++j)
                if (mask >> j & 1)
                    subset.push_back(eligible[j]);
            best = std::max(best, w(subset));
        }
        return best;
    };
    return {std::move(n_cap), PhiSpec::Function{"weight(" + w.name + ")", std::move(fn)}};
}

WeightFn weight_from_phi(const PhiSpec& phi, const Limits& limits)
{
    return {"phi(" + phi.descriptor() + ")", [phi, limits](std::span<const Nat> s) -> Nat {
        if (s.empty())
            return phi.n_cap();
        return phi.bound_nat(s.size() + 1, *std::max_element(s.begin(), s.end()), limits);
    }};
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json to_json(const PatternSet& set, const std::string& family,
    const Sequence& sequence, const PhiSpec* phi, const Limits& limits)
{
    nlohmann::ordered_json j;
    j["family"] = family;
    j["sequence"] = nlohmann::ordered_json::array();
    for (const auto& t : sequence.terms())
        j["sequence"].push_back(to_decimal(t));
    j["phi"] = phi ? nlohmann::ordered_json(phi->descriptor()) : nlohmann::ordered_json();
    j["elements"] = nlohmann::ordered_json::array();
    for (const auto* e : set.sorted(limits))
        j["elements"].push_back(to_json(e->value, limits));
    j["count"] = set.size();
    return j;
}

nlohmann::ordered_json to_json(const std::set<Nat>& set, const std::string& family,
    const std::vector<Nat>& sequence, const PhiSpec* phi)
{
    nlohmann::ordered_json j;
    j["family"] = family;
    j["sequence"] = nlohmann::ordered_json::array();
    for (const auto& t : sequence)
        j["sequence"].push_back(to_decimal(t));
    j["phi"] = phi ? nlohmann::ordered_json(phi->descriptor()) : nlohmann::ordered_json();
    j["elements"] = nlohmann::ordered_json::array();
    for (const auto& v : set)
        j["elements"].push_back(to_decimal(v));
    j["count"] = set.size();
    return j;
}

} // namespace expramsey
