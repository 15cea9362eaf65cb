#include "cli.hpp"

#include "expramsey/colorings.hpp"
#include "expramsey/errors.hpp"
#include "expramsey/oracle.hpp"
#include "expramsey/patterns.hpp"
#include "expramsey/search.hpp"
#include "expramsey/tower.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace expramsey::cli {

namespace {

using json = nlohmann::ordered_json;

// --- parsing helpers --------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<Nat> parse_list(const std::string& text, const char* flag)
{
    std::vector<Nat> out;
    for (const auto& item : split(text, ',')) {
        try {
            out.push_back(parse_nat(trim(item)));
        } catch (const InvalidArgument&) {
            throw InvalidArgument(std::string(flag) + ": '" + item + "' is not a decimal natural");
        }
    }
    if (out.empty())
        throw InvalidArgument(std::string(flag) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& text, const char* flag)
{
    std::vector<std::size_t> out;
    if (trim(text).empty())
        return out;
    for (const auto& v : parse_list(text, flag))
        out.push_back(to_ulong(v, flag));
    return out;
}

/// "N:tower:h", "N:const:c", "N:caps:c2,c3,...", or the presets
/// "towers" (1:tower:0) and "tall-towers" (1:tower:1).
PhiSpec parse_phi(const std::string& text)
{
    if (text == "towers")
        return PhiSpec::towers();
    if (text == "tall-towers")
        return PhiSpec::tall_towers();
    auto first = text.find(':');
    auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos)
        throw InvalidArgument("--phi: expected N:kind:value, 'towers' or 'tall-towers'");
    const Nat n_cap = parse_nat(text.substr(0, first));
    const std::string kind = text.substr(first + 1, second - first - 1);
    const std::string value = text.substr(second + 1);
    if (kind == "tower")
        return {n_cap, PhiSpec::TowerHeight{to_ulong(parse_nat(value), "--phi tower offset")}};
    if (kind == "const")
        return PhiSpec::constant(n_cap, parse_nat(value));
    if (kind == "caps")
        return PhiSpec::per_index(n_cap, value.empty() ? std::vector<Nat>{} : parse_list(value, "--phi"));
    throw InvalidArgument("--phi: unknown rule '" + kind + "'");
}

WeightFn parse_weight(const std::string& text)
{
    if (text == "size+1")
        return WeightFn::size_plus_one();
    if (text.rfind("const:", 0) == 0)
        return WeightFn::constant(parse_nat(text.substr(6)));
    throw InvalidArgument("--weight: expected const:c or size+1");
}

/// A decimal natural or b^e with decimal b >= 2 and e >= 1.
CanonicalPower parse_value(const std::string& text, const Limits& limits)
{
    auto caret = text.find('^');
    if (caret == std::string::npos) {
        Nat v = parse_nat(text);
        if (v < 1)
            throw InvalidArgument("values must be >= 1");
        return CanonicalPower::of(v, limits);
    }
    Nat base = parse_nat(text.substr(0, caret));
    Nat exponent = parse_nat(text.substr(caret + 1));
    if (base < 2 || exponent < 1)
        throw InvalidArgument("power values need base >= 2 and exponent >= 1: " + text);
    return canonicalize(base, FactoredExponent::of(exponent, limits), limits);
}

std::vector<std::string> read_values(const std::string& source)
{
    std::string text = source;
    if (!source.empty() && source.front() == '@') {
        std::ifstream in(source.substr(1));
        if (!in)
            throw InvalidArgument("--set: cannot open " + source.substr(1));
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    for (auto& ch : text)
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '\t')
            ch = ' ';
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string item; in >> item;)
        out.push_back(item);
    if (out.empty())
        throw InvalidArgument("--set: no values");
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

json decimal_array(const std::vector<Nat>& values)
{
    auto j = json::array();
    for (const auto& v : values)
        j.push_back(to_decimal(v));
    return j;
}

template <typename T>
std::string joined(const std::vector<T>& values, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += sep;
        if constexpr (std::is_same_v<T, Nat>)
            out += to_decimal(values[i]);
        else if constexpr (std::is_same_v<T, std::string>)
            out += values[i];
        else
            out += std::to_string(values[i]);
    }
    return out;
}

// --- configuration ------------------------------------------------------------

struct Settings {
    Limits limits;
    unsigned workers = 1;
    bool csv = false;
    bool timing = false;
};

void apply_config_file(const std::string& path, Settings& s, const std::map<std::string, bool>& overridden)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("--config: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("--config: expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const Nat value = parse_nat(trim(line.substr(eq + 1)));
        if (overridden.count(key) && overridden.at(key))
            continue;
        const auto v = to_ulong(value, key.c_str());
        if (key == "value_bit_cap")
            s.limits.value_bit_cap = v;
        else if (key == "exponent_direct_bit_cap")
            s.limits.exponent_direct_bit_cap = v;
        else if (key == "lambda_multiplicity_bit_cap")
            s.limits.lambda_multiplicity_bit_cap = v;
        else if (key == "enumeration_budget")
            s.limits.enumeration_budget = v;
        else if (key == "factorization_trial_bound")
            s.limits.factorization_trial_bound = v;
        else if (key == "workers")
            s.workers = static_cast<unsigned>(v);
        else
            throw InvalidArgument("--config: unknown key '" + key + "'");
    }
}

// --- subcommands --------------------------------------------------------------

struct GenArgs {
    std::string family;
    std::string seq;
    std::string phi;
    std::string weight;
    std::size_t level = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string idx;
};

void emit_set(std::ostream& out, const Settings& s, const PatternSet& set, const std::string& family,
    const Sequence& seq, const PhiSpec* phi)
{
    if (!s.csv) {
        out << to_json(set, family, seq, phi, s.limits).dump() << '\n';
        return;
    }
    out << "family,index,root,exp,decimal\n";
    std::size_t i = 0;
    for (const auto* e : set.sorted(s.limits)) {
        auto value = eval_capped(e->value, s.limits.value_bit_cap);
        out << family << ',' << i++ << ',' << to_decimal(e->value.root()) << ','
            << csv_field(e->value.exponent().to_string()) << ',' << (value ? to_decimal(*value) : "") << '\n';
    }
}

void emit_nat_set(std::ostream& out, const Settings& s, const std::set<Nat>& set, const std::string& family,
    const std::vector<Nat>& seq, const PhiSpec* phi)
{
    if (!s.csv) {
        out << to_json(set, family, seq, phi).dump() << '\n';
        return;
    }
    out << "family,index,value\n";
    std::size_t i = 0;
    for (const auto& v : set)
        out << family << ',' << i++ << ',' << to_decimal(v) << '\n';
}

int run_gen(const GenArgs& g, const Settings& s, std::ostream& out)
{
    const auto terms = parse_list(g.seq, "--seq");
    auto need_phi = [&] {
        if (g.phi.empty())
            throw InvalidArgument("--phi is required for family " + g.family);
        return parse_phi(g.phi);
    };
    auto level_of = [&](const Sequence& a) { return g.level == 0 ? a.size() : g.level; };
    const Limits& L = s.limits;

    if (g.family == "exp") {
        auto a = Sequence::exponential(terms);
        emit_set(out, s, exp_level(a, level_of(a), L), "exp", a, nullptr);
    } else if (g.family == "fe") {
        auto a = Sequence::exponential(terms);
        emit_set(out, s, fe_set(a, L), "fe", a, nullptr);
    } else if (g.family == "expprime") {
        auto a = Sequence::exponential(terms);
        emit_set(out, s, exp_prime_set(a, L), "expprime", a, nullptr);
    } else if (g.family == "expb") {
        auto a = Sequence::exponential(terms);
        auto phi = need_phi();
        emit_set(out, s, exp_bounded_level(a, level_of(a), phi, L), "expb", a, &phi);
    } else if (g.family == "feb") {
        auto a = Sequence::exponential(terms);
        auto phi = need_phi();
        emit_set(out, s, fe_bounded_set(a, phi, L), "feb", a, &phi);
    } else if (g.family == "ffam") {
        auto a = Sequence::additive(terms);
        auto phi = need_phi();
        emit_nat_set(out, s, f_family(a, phi, L), "ffam", terms, &phi);
    } else if (g.family == "fepw") {
        if (g.weight.empty())
            throw InvalidArgument("--weight is required for family fepw");
        auto w = parse_weight(g.weight);
        auto set = fep_w_set(terms, w, L);
        std::vector<Nat> reversed(terms.rbegin(), terms.rend());
        emit_set(out, s, set, "fepw[" + w.name + "]", Sequence::exponential(reversed), nullptr);
    } else if (g.family == "fs") {
        emit_nat_set(out, s, fs_set(terms, L), "fs", terms, nullptr);
    } else if (g.family == "tower") {
        auto a = Sequence::exponential(terms);
        auto idx = parse_indices(g.idx, "--idx");
        auto element = tower_build(a, g.n, g.m, idx, L);
        const bool member = contains_bounded(element, a, PhiSpec::tall_towers(), L);
        if (!s.csv) {
            json j;
            j["family"] = "tower";
            j["sequence"] = decimal_array(terms);
            j["n"] = g.n;
            j["m"] = g.m;
            j["idx"] = idx;
            j["value"] = to_json(element.value, L);
            j["member"] = member;
            out << j.dump() << '\n';
        } else {
            out << "family,root,exp,member\n"
                << "tower," << to_decimal(element.value.root()) << ','
                << csv_field(element.value.exponent().to_string()) << ',' << (member ? "true" : "false") << '\n';
        }
    } else {
        throw InvalidArgument("gen: unknown family '" + g.family + "'");
    }
    return kOk;
}

int run_color(const std::string& spec, const std::string& set_source, const Settings& s, std::ostream& out)
{
    const auto coloring = Coloring::parse(spec);
    PatternSet set;
    for (const auto& text : read_values(set_source))
        set.insert({parse_value(text, s.limits), 0, {}});
    const auto sorted = set.sorted(s.limits);
    const auto verdict = is_monochromatic(coloring, set, s.limits);
    const auto* mono = std::get_if<Monochromatic<CanonicalPower>>(&verdict);

    if (s.csv) {
        out << "root,exp,decimal,color\n";
        for (const auto* e : sorted) {
            auto value = eval_capped(e->value, s.limits.value_bit_cap);
            out << to_decimal(e->value.root()) << ',' << csv_field(e->value.exponent().to_string()) << ','
                << (value ? to_decimal(*value) : "") << ',' << coloring.color_of(e->value, s.limits) << '\n';
        }
        return kOk;
    }
    json j;
    j["coloring"] = coloring.descriptor();
    j["values"] = json::array();
    for (const auto* e : sorted) {
        json row;
        row["value"] = to_json(e->value, s.limits);
        row["color"] = coloring.color_of(e->value, s.limits);
        j["values"].push_back(row);
    }
    j["monochromatic"] = mono != nullptr;
    if (mono) {
        j["color"] = mono->color;
    } else {
        const auto& split_pair = std::get<NotMonochromatic<CanonicalPower>>(verdict);
        j["witness"] = json::array({to_json(split_pair.first, s.limits), to_json(split_pair.second, s.limits)});
    }
    out << j.dump() << '\n';
    return kOk;
}

struct SearchArgs {
    std::string family;
    std::string allow_equal;
    std::string phi;
    std::string engine = "backtracking";
    std::string coloring;
    std::uint64_t window = 0;
    std::size_t colors = 2;
    std::size_t length = 0;
};

InstanceFamily parse_family(const SearchArgs& a)
{
    std::optional<bool> allow;
    if (a.allow_equal == "true")
        allow = true;
    else if (a.allow_equal == "false")
        allow = false;
    else if (!a.allow_equal.empty())
        throw InvalidArgument("--allow-equal: expected true or false");

    if (a.family == "schur")
        return {AdditiveSchur{allow.value_or(true)}, a.window};
    if (a.family == "expschur")
        return {ExpSchur{allow.value_or(false)}, a.window};
    auto colon = a.family.find(':');
    if (colon != std::string::npos) {
        const std::string kind = a.family.substr(0, colon);
        const auto k = to_ulong(parse_nat(a.family.substr(colon + 1)), "--family size");
        if (kind == "fs")
            return {FSk{k}, a.window};
        if (kind == "fe") {
            if (a.phi.empty())
                throw InvalidArgument("--phi is required for family fe:n");
            return {FEPrefix{k, parse_phi(a.phi)}, a.window};
        }
    }
    throw InvalidArgument("--family: expected schur, expschur, fs:k or fe:n");
}

void emit_outcome(std::ostream& out, const Settings& s, const std::string& family, std::size_t r,
    std::uint64_t window, const SearchOutcome& o, json extra)
{
    std::vector<std::string> witness;
    if (o.verdict == Verdict::WitnessColoring)
        for (auto c : o.coloring)
            witness.push_back(std::to_string(c));
    for (auto v : o.sequence)
        witness.push_back(std::to_string(v));

    if (s.csv) {
        std::ostringstream millis;
        if (s.timing)
            millis << std::fixed << std::setprecision(3) << o.stats.millis;
        out << "family,r,M,verdict,witness,nodes,millis\n"
            << csv_field(family) << ',' << r << ',' << window << ',' << to_string(o.verdict) << ','
            << joined(witness, ";") << ',' << o.stats.nodes << ',' << millis.str() << '\n';
        return;
    }
    json j;
    j["family"] = family;
    j["r"] = r;
    j["M"] = std::to_string(window);
    for (auto& [key, value] : extra.items())
        j[key] = value;
    j["verdict"] = to_string(o.verdict);
    j["witness"] = witness;
    j["nodes"] = o.stats.nodes;
    if (s.timing)
        j["millis"] = o.stats.millis;
    out << j.dump() << '\n';
}

int run_search_avoid(const SearchArgs& a, const Settings& s, std::ostream& out)
{
    const auto fam = parse_family(a);
    SearchOptions options;
    options.workers = s.workers;
    if (a.engine == "exhaustive")
        options.engine = Engine::Exhaustive;
    else if (a.engine != "backtracking")
        throw InvalidArgument("--engine: expected exhaustive or backtracking");
    const auto outcome = avoidance_search(fam, a.colors, options, s.limits);
    json extra;
    extra["first"] = std::to_string(fam.first());
    extra["engine"] = a.engine;
    emit_outcome(out, s, fam.name(), a.colors, a.window, outcome, extra);
    return kOk;
}

int run_search_witness(const SearchArgs& a, const Settings& s, std::ostream& out)
{
    if (a.coloring.empty())
        throw InvalidArgument("--coloring is required for witness search");
    if (a.phi.empty())
        throw InvalidArgument("--phi is required for witness search");
    const auto coloring = Coloring::parse(a.coloring);
    const auto phi = parse_phi(a.phi);
    SearchOptions options;
    options.workers = s.workers;
    const auto outcome = witness_search(coloring, a.window, phi, a.length, options, s.limits);
    json extra;
    extra["coloring"] = coloring.descriptor();
    extra["phi"] = phi.descriptor();
    extra["length"] = a.length;
    emit_outcome(out, s, "witness", coloring.num_colors(), a.window, outcome, extra);
    return kOk;
}

int run_verify(const std::string& name, const Settings& s, std::ostream& out)
{
    const auto reports = name == "all" ? run_all(s.workers, s.limits) : run_check(name, s.workers, s.limits);
    bool all_pass = true;
    if (s.csv)
        out << "check,instance,pass,counterexample\n";
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        if (s.csv)
            out << r.check << ',' << csv_field(r.instance) << ',' << (r.pass ? "true" : "false") << ','
                << csv_field(r.counterexample ? r.counterexample->dump() : "") << '\n';
        else
            out << r.to_json().dump() << '\n';
    }
    return all_pass ? kOk : kCheckFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exponential Ramsey pattern toolkit"};
    app.name("expramsey");
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");
    std::map<std::string, CLI::Option*> limit_flags;
    limit_flags["value_bit_cap"] = app.add_option("--value-bit-cap", s.limits.value_bit_cap);
    limit_flags["exponent_direct_bit_cap"] = app.add_option("--exponent-direct-bit-cap", s.limits.exponent_direct_bit_cap);
    limit_flags["lambda_multiplicity_bit_cap"] = app.add_option("--lambda-bit-cap", s.limits.lambda_multiplicity_bit_cap);
    limit_flags["enumeration_budget"] = app.add_option("--enumeration-budget", s.limits.enumeration_budget);
    limit_flags["factorization_trial_bound"] = app.add_option("--factorization-trial-bound", s.limits.factorization_trial_bound);
    limit_flags["workers"] = app.add_option("--workers", s.workers, "worker threads (0 = all cores)");
    auto* json_flag = app.add_flag("--json", "JSON output (default)");
    auto* csv_flag = app.add_flag("--csv", s.csv, "CSV output");
    json_flag->excludes(csv_flag);
    app.add_flag("--timing", s.timing, "include wall time in search output");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a pattern family");
    gen->add_option("family", gen_args.family, "exp, fe, expprime, expb, feb, ffam, fepw, fs or tower")->required();
    gen->add_option("--seq", gen_args.seq, "comma-separated terms")->required();
    gen->add_option("--phi", gen_args.phi, "N:tower:h, N:const:c, N:caps:c2,c3,..., towers or tall-towers");
    gen->add_option("--weight", gen_args.weight, "const:c or size+1");
    gen->add_option("--level", gen_args.level, "level i (default: the full length)");
    gen->add_option("--n", gen_args.n, "tower: top index");
    gen->add_option("--m", gen_args.m, "tower: second index");
    gen->add_option("--idx", gen_args.idx, "tower: inner indices");

    std::string color_spec;
    std::string color_set;
    auto* color = app.add_subcommand("color", "color a set of values");
    color->add_option("--spec", color_spec, "mod:m[:c0,...], bits:r, table:@file.csv or prod:s1|s2")->required();
    color->add_option("--set", color_set, "@file or comma-separated values (n or b^e)")->required();

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "finite-window searches");
    search->require_subcommand(1);
    auto* avoid = search->add_subcommand("avoid", "avoidance colorings");
    avoid->add_option("--family", search_args.family, "schur, expschur, fs:k or fe:n")->required();
    avoid->add_option("--window", search_args.window, "M")->required();
    avoid->add_option("--colors", search_args.colors, "r");
    avoid->add_option("--engine", search_args.engine, "backtracking or exhaustive");
    avoid->add_option("--allow-equal", search_args.allow_equal, "true or false");
    avoid->add_option("--phi", search_args.phi, "bounds for fe:n");
    auto* witness = search->add_subcommand("witness", "monochromatic witness sequences");
    witness->add_option("--coloring", search_args.coloring)->required();
    witness->add_option("--window", search_args.window, "M")->required();
    witness->add_option("--phi", search_args.phi)->required();
    witness->add_option("--length", search_args.length, "target length")->required();

    std::string check_name;
    auto* verify = app.add_subcommand("verify", "run oracle checks");
    verify->add_option("check", check_name, "a check name or all")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (!config_path.empty()) {
            std::map<std::string, bool> overridden;
            for (const auto& [key, option] : limit_flags)
                overridden[key] = option->count() > 0;
            apply_config_file(config_path, s, overridden);
        }
        s.limits.validate();

        if (*gen)
            return run_gen(gen_args, s, out);
        if (*color)
            return run_color(color_spec, color_set, s, out);
        if (*avoid)
            return run_search_avoid(search_args, s, out);
        if (*witness)
            return run_search_witness(search_args, s, out);
        if (*verify)
            return run_verify(check_name, s, out);
    } catch (const LimitExceeded& e) {
        err << "limit exceeded: " << e.what() << '\n';
        return kLimit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace expramsey::cli
