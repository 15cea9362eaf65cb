#include "expramsey/search.hpp"

#include "expramsey/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

namespace expramsey {

std::uint64_t InstanceFamily::first() const
{
    return std::holds_alternative<ExpSchur>(kind) || std::holds_alternative<FEPrefix>(kind) ? 2 : 1;
}

std::string InstanceFamily::name() const
{
    return std::visit([](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AdditiveSchur>)
            return k.allow_equal ? "schur" : "schur-distinct";
        else if constexpr (std::is_same_v<K, ExpSchur>)
            return k.allow_equal ? "expschur-equal" : "expschur";
        else if constexpr (std::is_same_v<K, FSk>)
            return "fs" + std::to_string(k.k);
        else
            return "fe" + std::to_string(k.n) + "[" + k.phi.descriptor() + "]";
    }, kind);
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::WitnessColoring: return "WitnessColoring";
    case Verdict::Unavoidable: return "Unavoidable";
    case Verdict::WitnessSequence: return "WitnessSequence";
    case Verdict::NoWitness: return "NoWitness";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Instances

namespace {

class Budget {
public:
    explicit Budget(const Limits& limits) : limit_(limits.enumeration_budget) {}
    void charge(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > limit_)
            throw EnumerationBudgetExceeded("instance enumeration exceeds the budget of "
                + std::to_string(limit_));
    }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

std::vector<Instance> additive_schur(const AdditiveSchur& k, std::uint64_t m, Budget& budget)
{
    std::vector<Instance> out;
    for (std::uint64_t c = 2; c <= m; ++c)
        for (std::uint64_t a = 1; 2 * a <= c; ++a) {
            const std::uint64_t b = c - a;
            if (a == b && !k.allow_equal)
                continue;
            budget.charge();
            out.push_back({a, b, c});
        }
    return out;
}

std::vector<Instance> exp_schur(const ExpSchur& k, std::uint64_t m, Budget& budget)
{
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> found; // (a^b, a, b)
    for (std::uint64_t a = 2; a <= m / a; ++a) {
        std::uint64_t p = a;
        for (std::uint64_t b = 2; p <= m / a; ++b) {
            p *= a;
            if (a == b && !k.allow_equal)
                continue;
            budget.charge();
            found.emplace_back(p, a, b);
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<Instance> out;
    for (auto [c, a, b] : found)
        out.push_back({a, b, c});
    return out;
}

void fs_subsets(std::uint64_t k, std::uint64_t m, std::vector<std::uint64_t>& chosen, std::uint64_t next,
    std::uint64_t sum, std::vector<Instance>& out, Budget& budget)
{
    if (chosen.size() == k) {
        std::vector<Nat> terms(chosen.begin(), chosen.end());
        Instance inst;
        for (const auto& s : fs_set(terms))
            inst.push_back(s.get_ui());
        out.push_back(std::move(inst));
        return;
    }
    for (std::uint64_t v = next; sum + v <= m; ++v) {
        budget.charge();
        chosen.push_back(v);
        fs_subsets(k, m, chosen, v + 1, sum + v, out, budget);
        chosen.pop_back();
    }
}

// Sorted values of FE_{N,Phi}(terms) when all of them lie in [2, m].
std::optional<Instance> fe_instance(const std::vector<Nat>& terms, const PhiSpec& phi, std::uint64_t m,
    const Limits& limits)
{
    auto set = fe_bounded_set(Sequence::exponential(terms), phi, limits);
    const Nat bound(std::to_string(m));
    Instance inst;
    for (const auto& v : set.values()) {
        auto value = eval_capped(v, bit_length(bound));
        if (!value || *value > bound)
            return std::nullopt;
        inst.push_back(value->get_ui());
    }
    std::sort(inst.begin(), inst.end());
    return inst;
}

void fe_tuples(const FEPrefix& k, std::uint64_t m, std::vector<Nat>& chosen, std::uint64_t next,
    std::vector<Instance>& out, Budget& budget, const Limits& limits)
{
    for (std::uint64_t v = next; v <= m; ++v) {
        budget.charge();
        chosen.emplace_back(std::to_string(v));
        // Values only grow along prefixes, so a prefix that leaves the
        // window rules out every extension.
        auto inst = fe_instance(chosen, k.phi, m, limits);
        chosen.pop_back();
        if (!inst)
            break;
        chosen.emplace_back(std::to_string(v));
        if (chosen.size() == k.n)
            out.push_back(std::move(*inst));
        else
            fe_tuples(k, m, chosen, v + 1, out, budget, limits);
        chosen.pop_back();
    }
}

} // namespace

std::vector<Instance> enumerate_instances(const InstanceFamily& fam, const Limits& limits)
{
    Budget budget(limits);
    const std::uint64_t m = fam.window;
    return std::visit([&](const auto& k) -> std::vector<Instance> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AdditiveSchur>) {
            return additive_schur(k, m, budget);
        } else if constexpr (std::is_same_v<K, ExpSchur>) {
            return exp_schur(k, m, budget);
        } else if constexpr (std::is_same_v<K, FSk>) {
            if (k.k < 1)
                throw InvalidArgument("FS_k needs k >= 1");
            std::vector<Instance> out;
            std::vector<std::uint64_t> chosen;
            fs_subsets(k.k, m, chosen, 1, 0, out, budget);
            return out;
        } else {
            if (k.n < 1)
                throw InvalidArgument("FE prefix family needs n >= 1");
            std::vector<Instance> out;
            std::vector<Nat> chosen;
            fe_tuples(k, m, chosen, 2, out, budget, limits);
            return out;
        }
    }, fam.kind);
}

bool coloring_avoids(const std::vector<Instance>& instances, std::uint64_t first,
    const std::vector<Color>& coloring)
{
    for (const auto& inst : instances) {
        bool mono = true;
        for (auto v : inst) {
            if (v < first || v - first >= coloring.size())
                return false;
            mono = mono && coloring[v - first] == coloring[inst.front() - first];
        }
        if (mono)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Avoidance

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Instances as sorted, distinct vertex indices 0..W-1.
struct Hypergraph {
    std::size_t vertices = 0;
    std::vector<std::vector<std::size_t>> edges;
    std::vector<std::vector<std::size_t>> incident; // vertex -> edge ids
};

Hypergraph build_hypergraph(const std::vector<Instance>& instances, std::uint64_t first, std::uint64_t window)
{
    Hypergraph h;
    h.vertices = window >= first ? window - first + 1 : 0;
    h.incident.resize(h.vertices);
    for (const auto& inst : instances) {
        std::vector<std::size_t> edge;
        for (auto v : inst)
            edge.push_back(v - first);
        std::sort(edge.begin(), edge.end());
        edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
        const std::size_t id = h.edges.size();
        for (auto v : edge)
            h.incident[v].push_back(id);
        h.edges.push_back(std::move(edge));
    }
    return h;
}

// Depth-first search over colorings of vertices 0, 1, ... in order, with
// colors tried in increasing order. A new vertex may use at most one color
// beyond those already used: every coloring is a relabeling of one in that
// form, and the lexicographically least avoider always is in that form.
class Backtracker {
public:
    Backtracker(const Hypergraph& h, std::size_t r)
        : h_(h), r_(r), color_(h.vertices, kUnset), domain_(h.vertices, full_mask(r)) {}

    /// Assigns the given prefix; false if it already fails.
    bool assign_prefix(const std::vector<Color>& prefix)
    {
        for (std::size_t v = 0; v < prefix.size(); ++v) {
            ++nodes_;
            if (!(domain_[v] >> prefix[v] & 1) || !assign(v, prefix[v]))
                return false;
            max_used_ = std::max<std::ptrdiff_t>(max_used_, static_cast<std::ptrdiff_t>(prefix[v]));
        }
        return true;
    }

    bool solve(std::size_t v)
    {
        if (v == h_.vertices)
            return true;
        const std::ptrdiff_t saved_max = max_used_;
        const std::size_t limit = std::min<std::size_t>(r_, static_cast<std::size_t>(max_used_ + 2));
        for (Color c = 0; c < limit; ++c) {
            if (!(domain_[v] >> c & 1))
                continue;
            ++nodes_;
            const std::size_t mark = trail_.size();
            if (assign(v, c)) {
                max_used_ = std::max<std::ptrdiff_t>(saved_max, static_cast<std::ptrdiff_t>(c));
                if (solve(v + 1))
                    return true;
            }
            undo(mark);
            color_[v] = kUnset;
            max_used_ = saved_max;
        }
        return false;
    }

    std::vector<Color> coloring() const { return {color_.begin(), color_.end()}; }
    std::uint64_t nodes() const { return nodes_; }

private:
    static constexpr Color kUnset = static_cast<Color>(-1);
    static std::uint64_t full_mask(std::size_t r) { return r >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1; }

    // Colors v and propagates: a completed edge must not be monochromatic,
    // and an edge with one free vertex and a single color so far bans that
    // color from the free vertex.
    bool assign(std::size_t v, Color c)
    {
        color_[v] = c;
        for (auto id : h_.incident[v]) {
            std::size_t free_count = 0;
            std::size_t free_vertex = 0;
            bool same = true;
            for (auto u : h_.edges[id]) {
                if (color_[u] == kUnset) {
                    ++free_count;
                    free_vertex = u;
                } else if (color_[u] != c) {
                    same = false;
                }
            }
            if (!same)
                continue;
            if (free_count == 0)
                return false;
            if (free_count == 1 && (domain_[free_vertex] >> c & 1)) {
                trail_.emplace_back(free_vertex, domain_[free_vertex]);
                domain_[free_vertex] &= ~(std::uint64_t{1} << c);
                if (domain_[free_vertex] == 0)
                    return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            domain_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
    }

    const Hypergraph& h_;
    std::size_t r_;
    std::vector<Color> color_;
    std::vector<std::uint64_t> domain_;
    std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
    std::ptrdiff_t max_used_ = -1;
    std::uint64_t nodes_ = 0;
};

// Prefixes in normal form (first uses of colors appear in order 0, 1, ...), lexicographic.
std::vector<std::vector<Color>> normal_prefixes(std::size_t length, std::size_t r)
{
    std::vector<std::vector<Color>> out{{}};
    for (std::size_t d = 0; d < length; ++d) {
        std::vector<std::vector<Color>> next;
        for (const auto& p : out) {
            Color used = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
            for (Color c = 0; c < std::min<std::size_t>(r, used + 1); ++c) {
                auto q = p;
                q.push_back(c);
                next.push_back(std::move(q));
            }
        }
        out = std::move(next);
    }
    return out;
}

constexpr std::size_t kSplitDepth = 6;

SearchOutcome backtracking(const Hypergraph& h, std::size_t r, unsigned workers)
{
    const auto prefixes = normal_prefixes(std::min(kSplitDepth, h.vertices), r);
    auto hit = detail::first_hit<std::vector<Color>>(prefixes.size(), workers,
        [&](std::size_t i) {
            Backtracker bt(h, r);
            detail::TaskResult<std::vector<Color>> result;
            if (bt.assign_prefix(prefixes[i]) && bt.solve(prefixes[i].size()))
                result.found = bt.coloring();
            result.nodes = bt.nodes();
            return result;
        });
    SearchOutcome out{hit.found ? Verdict::WitnessColoring : Verdict::Unavoidable, {}, {}, {}};
    if (hit.found)
        out.coloring = std::move(*hit.found);
    out.stats.nodes = hit.nodes;
    return out;
}

SearchOutcome exhaustive(const Hypergraph& h, std::size_t r, const Limits& limits)
{
    Nat total = 1;
    for (std::size_t v = 0; v < h.vertices; ++v)
        total *= r;
    if (total > Nat(std::to_string(limits.enumeration_budget)))
        throw EnumerationBudgetExceeded("exhaustive search over " + to_decimal(total)
            + " colorings exceeds the budget");
    std::vector<Color> coloring(h.vertices, 0);
    SearchOutcome out{Verdict::Unavoidable, {}, {}, {}};
    while (true) {
        ++out.stats.nodes;
        bool ok = true;
        for (const auto& edge : h.edges) {
            bool mono = true;
            for (auto u : edge)
                mono = mono && coloring[u] == coloring[edge.front()];
            if (mono) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.verdict = Verdict::WitnessColoring;
            out.coloring = coloring;
            return out;
        }
        std::size_t v = h.vertices;
        while (v > 0 && coloring[v - 1] + 1 == r)
            coloring[--v] = 0;
        if (v == 0)
            return out;
        ++coloring[v - 1];
    }
}

} // namespace

SearchOutcome avoidance_search(const InstanceFamily& fam, std::size_t r, const SearchOptions& options,
    const Limits& limits)
{
    if (r < 1 || r > 64)
        throw InvalidArgument("avoidance search needs 1 <= r <= 64");
    const auto start = Clock::now();
    const auto instances = enumerate_instances(fam, limits);
    const auto h = build_hypergraph(instances, fam.first(), fam.window);
    auto out = options.engine == Engine::Exhaustive ? exhaustive(h, r, limits)
                                                    : backtracking(h, r, options.workers);
    if (out.verdict == Verdict::WitnessColoring && !coloring_avoids(instances, fam.first(), out.coloring))
        throw Error("internal: reported coloring fails its recheck");
    out.stats.millis = millis_since(start);
    return out;
}

// ---------------------------------------------------------------------------
// Witness sequences

namespace {

struct WitnessContext {
    const Coloring& c;
    std::uint64_t window;
    const PhiSpec& phi;
    std::size_t target;
    const Limits& limits;
    std::uint64_t nodes = 0;
};

// Every element of the newest level shares the color of the earlier ones.
// Since earlier prefixes were monochromatic, this keeps the whole set so.
bool level_agrees(WitnessContext& ctx, const std::vector<Nat>& terms, Color color)
{
    const auto seq = Sequence::exponential(terms);
    for (const auto& v : exp_bounded_level(seq, terms.size(), ctx.phi, ctx.limits).values())
        if (ctx.c.color_of(v, ctx.limits) != color)
            return false;
    return true;
}

bool extend(WitnessContext& ctx, std::vector<Nat>& terms, Color color)
{
    if (terms.size() == ctx.target)
        return true;
    for (std::uint64_t v = terms.back().get_ui() + 1; v <= ctx.window; ++v) {
        ++ctx.nodes;
        terms.emplace_back(std::to_string(v));
        if (level_agrees(ctx, terms, color) && extend(ctx, terms, color))
            return true;
        terms.pop_back();
    }
    return false;
}

} // namespace

SearchOutcome witness_search(const Coloring& c, std::uint64_t window, const PhiSpec& phi,
    std::size_t target_len, const SearchOptions& options, const Limits& limits)
{
    if (target_len < 1)
        throw InvalidArgument("witness length must be at least 1");
    const auto start = Clock::now();
    const std::size_t tasks = window >= 2 ? window - 1 : 0;
    auto hit = detail::first_hit<std::vector<std::uint64_t>>(tasks, options.workers, [&](std::size_t i) {
        WitnessContext ctx{c, window, phi, target_len, limits};
        std::vector<Nat> terms{Nat(std::to_string(i + 2))};
        ++ctx.nodes;
        detail::TaskResult<std::vector<std::uint64_t>> result;
        if (extend(ctx, terms, c.color_of(terms.front(), limits))) {
            std::vector<std::uint64_t> seq;
            for (const auto& t : terms)
                seq.push_back(t.get_ui());
            result.found = std::move(seq);
        }
        result.nodes = ctx.nodes;
        return result;
    });
    SearchOutcome out{hit.found ? Verdict::WitnessSequence : Verdict::NoWitness, {}, {}, {}};
    if (hit.found) {
        out.sequence = std::move(*hit.found);
        if (!sequence_is_witness(c, out.sequence, phi, limits))
            throw Error("internal: reported sequence fails its recheck");
    }
    out.stats.nodes = hit.nodes;
    out.stats.millis = millis_since(start);
    return out;
}

bool sequence_is_witness(const Coloring& c, const std::vector<std::uint64_t>& seq, const PhiSpec& phi,
    const Limits& limits)
{
    std::vector<Nat> terms;
    for (auto v : seq)
        terms.emplace_back(std::to_string(v));
    const auto set = fe_bounded_set(Sequence::exponential(std::move(terms)), phi, limits);
    return std::holds_alternative<Monochromatic<CanonicalPower>>(is_monochromatic(c, set, limits));
}

} // namespace expramsey
