#include "expramsey/colorings.hpp"

#include "expramsey/errors.hpp"
#include "interval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace expramsey {

namespace {

std::size_t count_colors(const std::vector<Color>& colors)
{
    if (colors.empty())
        throw InvalidArgument("a coloring needs at least one color entry");
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Color parse_color(std::string_view text)
{
    return static_cast<Color>(to_ulong(parse_nat(trim(text)), "color"));
}

std::vector<Color> read_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open coloring table " + path);
    std::map<unsigned long, Color> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto fields = split(view, ',');
        if (fields.size() != 2)
            throw InvalidArgument("coloring table rows are index,color: " + line);
        if (first && !std::isdigit(static_cast<unsigned char>(trim(fields[0]).front()))) {
            first = false; // header
            continue;
        }
        first = false;
        auto index = to_ulong(parse_nat(trim(fields[0])), "table index");
        if (!rows.emplace(index, parse_color(fields[1])).second)
            throw InvalidArgument("duplicate table index " + std::to_string(index));
    }
    std::vector<Color> colors;
    for (const auto& [index, color] : rows) {
        if (index != colors.size() + 1)
            throw InvalidArgument("coloring table must cover 1..M without gaps");
        colors.push_back(color);
    }
    return colors;
}

} // namespace

Coloring Coloring::residue_mod(Nat m, std::vector<Color> colors)
{
    if (m < 1)
        throw InvalidArgument("residue coloring needs m >= 1");
    if (colors.empty()) {
        auto count = to_ulong(m, "identity residue coloring modulus");
        for (unsigned long i = 0; i < count; ++i)
            colors.push_back(i);
    }
    if (Nat(colors.size()) != m)
        throw InvalidArgument("residue coloring needs exactly m colors");
    auto r = count_colors(colors);
    return {r, ResidueMod{std::move(m), std::move(colors)}};
}

Coloring Coloring::bit_length_mod(std::size_t r)
{
    if (r < 1)
        throw InvalidArgument("bit-length coloring needs r >= 1");
    return {r, BitLengthMod{r}};
}

Coloring Coloring::explicit_table(std::vector<Color> colors)
{
    auto r = count_colors(colors);
    return {r, ExplicitTable{std::move(colors)}};
}

Coloring Coloring::composite(Coloring first, Coloring second)
{
    auto r = first.num_colors() * second.num_colors();
    return {r, Composite{std::make_shared<const Coloring>(std::move(first)),
                   std::make_shared<const Coloring>(std::move(second))}};
}

Coloring Coloring::parse(std::string_view spec)
{
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw InvalidArgument("coloring spec needs a kind prefix: " + std::string(spec));
    auto kind = spec.substr(0, colon);
    auto rest = spec.substr(colon + 1);
    if (kind == "prod") {
        auto bar = rest.find('|');
        if (bar == std::string_view::npos)
            throw InvalidArgument("prod coloring needs spec1|spec2");
        return composite(parse(rest.substr(0, bar)), parse(rest.substr(bar + 1)));
    }
    if (kind == "mod") {
        auto parts = split(rest, ':');
        if (parts.size() > 2)
            throw InvalidArgument("mod coloring is mod:m[:c0,c1,...]");
        std::vector<Color> colors;
        if (parts.size() == 2)
            for (auto c : split(parts[1], ','))
                colors.push_back(parse_color(c));
        return residue_mod(parse_nat(trim(parts[0])), std::move(colors));
    }
    if (kind == "bits")
        return bit_length_mod(to_ulong(parse_nat(trim(rest)), "color count"));
    if (kind == "table") {
        if (rest.empty() || rest.front() != '@')
            throw InvalidArgument("table coloring is table:@file.csv");
        return explicit_table(read_table(std::string(rest.substr(1))));
    }
    throw InvalidArgument("unknown coloring kind " + std::string(kind));
}

Color Coloring::color_of(const Nat& v, const Limits& limits) const
{
    if (v < 1)
        throw InvalidArgument("colorings are defined on naturals >= 1");
    return std::visit([&](const auto& rule) -> Color {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, ResidueMod>) {
            Nat residue = v % rule.m;
            return rule.colors[residue.get_ui()];
        } else if constexpr (std::is_same_v<R, BitLengthMod>) {
            return bit_length(v) % rule.r;
        } else if constexpr (std::is_same_v<R, ExplicitTable>) {
            if (v > rule.colors.size())
                throw OutOfDomain("table coloring covers 1.." + std::to_string(rule.colors.size())
                    + ", not " + to_decimal(v));
            return rule.colors[v.get_ui() - 1];
        } else {
            return rule.first->color_of(v, limits) * rule.second->num_colors()
                + rule.second->color_of(v, limits);
        }
    }, rule_);
}

Color Coloring::color_of(const CanonicalPower& v, const Limits& limits) const
{
    return std::visit([&](const auto& rule) -> Color {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, ResidueMod>) {
            Nat residue = pow_mod(v.root(), v.exponent(), rule.m, limits);
            return rule.colors[residue.get_ui()];
        } else if constexpr (std::is_same_v<R, BitLengthMod>) {
            return expramsey::bit_length_mod(v, rule.r, limits);
        } else if constexpr (std::is_same_v<R, ExplicitTable>) {
            auto value = eval_capped(v, bit_length(Nat(rule.colors.size())));
            if (!value)
                throw OutOfDomain("table coloring covers 1.." + std::to_string(rule.colors.size())
                    + ", not " + v.to_string());
            return color_of(*value, limits);
        } else {
            return rule.first->color_of(v, limits) * rule.second->num_colors()
                + rule.second->color_of(v, limits);
        }
    }, rule_);
}

std::string Coloring::descriptor() const
{
    return std::visit([&](const auto& rule) -> std::string {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, ResidueMod>) {
            std::string out = "mod:" + to_decimal(rule.m) + ":";
            for (std::size_t i = 0; i < rule.colors.size(); ++i)
                out += (i ? "," : "") + std::to_string(rule.colors[i]);
            return out;
        } else if constexpr (std::is_same_v<R, BitLengthMod>) {
            return "bits:" + std::to_string(rule.r);
        } else if constexpr (std::is_same_v<R, ExplicitTable>) {
            return "table:" + std::to_string(rule.colors.size());
        } else {
            return "prod:" + rule.first->descriptor() + "|" + rule.second->descriptor();
        }
    }, rule_);
}

std::size_t bit_length_mod(const CanonicalPower& v, std::size_t r, const Limits& limits)
{
    if (r < 1)
        throw InvalidArgument("bit-length coloring needs r >= 1");
    if (auto value = eval_capped(v, limits.value_bit_cap))
        return bit_length(*value) % r;
    // 2^E has E + 1 bits.
    if (v.root() == 2)
        return Nat(v.exponent().mod(r) + 1).get_ui() % r;

    auto e = v.exponent().value(limits.exponent_direct_bit_cap);
    if (!e)
        throw OutOfDomain("bit length of " + v.to_string() + " needs an exponent wider than the direct cap");
    // floor(E log2 root) + 1; the product is irrational because root is odd or
    // a non-power of two, so refining the enclosure always settles the floor.
    const auto magnitude = static_cast<mpfr_prec_t>(bit_length(*e) + bit_length(v.root()) + 64);
    for (mpfr_prec_t precision = magnitude; precision <= 8 * magnitude + (1 << 16); precision *= 2) {
        auto enclosure = detail::Interval::log2_of(v.root(), precision);
        enclosure.mul_nonneg(detail::Interval::of(*e, precision));
        Nat floor_value;
        if (enclosure.floor_determined(floor_value))
            return Nat((floor_value + 1) % r).get_ui();
    }
    throw CapExceeded("bit length of " + v.to_string() + " not settled within the precision limit");
}

namespace {

template <typename T, typename ColorFn>
MonoResult<T> first_split(const std::vector<T>& sorted, ColorFn&& color)
{
    if (sorted.empty())
        throw InvalidArgument("monochromaticity of an empty set is undefined");
    const Color c0 = color(sorted.front());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (color(sorted[i]) != c0)
            return NotMonochromatic<T>{sorted.front(), sorted[i]};
    return Monochromatic<T>{c0};
}

} // namespace

MonoResult<CanonicalPower> is_monochromatic(const Coloring& c, const PatternSet& s, const Limits& limits)
{
    std::vector<CanonicalPower> sorted;
    for (const auto* e : s.sorted(limits))
        sorted.push_back(e->value);
    return first_split(sorted, [&](const CanonicalPower& v) { return c.color_of(v, limits); });
}

MonoResult<Nat> is_monochromatic(const Coloring& c, const std::set<Nat>& s, const Limits& limits)
{
    std::vector<Nat> sorted(s.begin(), s.end());
    return first_split(sorted, [&](const Nat& v) { return c.color_of(v, limits); });
}

} // namespace expramsey
