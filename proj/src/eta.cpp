#include "itlab/eta.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "itlab/error.hpp"

namespace itlab {
namespace {

constexpr std::array<std::string_view, 8> kRuleNames = {"Empty",        "NonEmpty",   "IsolatedVertex", "ExactAtMostOne",
                                                        "ComponentSum", "DegreeRule", "DensityRule",    "GameStep"};

struct Canonical {
    DenseGraph graph;
    std::vector<Vertex> order; // canonical index -> index in the source graph
};

Canonical canonicalize(const DenseGraph& g) {
    Canonical c;
    c.order = canonical_order(g);
    c.graph = g.permuted(c.order);
    return c;
}

DenseGraph explode_dense(const DenseGraph& g, const Edge& e, std::vector<Vertex>* kept) {
    VertexSet killed = g.row(static_cast<std::size_t>(e.u)) | g.row(static_cast<std::size_t>(e.v));
    VertexSet keep = killed.complement();
    if (kept) {
        kept->clear();
        keep.for_each([&](std::size_t v) { kept->push_back(static_cast<Vertex>(v)); });
    }
    return g.induced(keep);
}

DenseGraph delete_dense(const DenseGraph& g, const Edge& e) {
    DenseGraph out = g;
    out.remove_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    return out;
}

VertexSet mask_of(std::size_t n, const std::vector<Vertex>& members) {
    VertexSet s(n);
    for (Vertex v : members) s.set(static_cast<std::size_t>(v));
    return s;
}

EtaTracePtr leaf(EtaRule rule, EtaValue value) {
    auto t = std::make_shared<EtaTrace>();
    t->rule = rule;
    t->value = value;
    return t;
}

struct Key {
    std::vector<std::uint64_t> words;
    friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto w : k.words) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

Key key_of(const DenseGraph& g) {
    Key k;
    k.words.push_back(g.order());
    for (std::size_t v = 0; v < g.order(); ++v) {
        auto w = g.row(v).words();
        k.words.insert(k.words.end(), w.begin(), w.end());
    }
    return k;
}

struct BudgetExhausted {};

struct Result {
    EtaValue value;
    bool complete = false;
    EtaTracePtr trace;
};

class Engine {
public:
    Engine(const EtaLimits& limits, const EtaRules& rules) : limits_(limits), rules_(rules) {}

    Result run_root(const DenseGraph& canonical_root, int depth, bool enforce_budget) {
        enforce_budget_ = enforce_budget;
        return eval(canonical_root, depth, true);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    struct Entry {
        int depth;
        Result result;
    };

    Result eval(const DenseGraph& g, int depth, bool root) {
        ++nodes_;
        if (enforce_budget_ && nodes_ > limits_.node_budget) throw BudgetExhausted{};
        const std::size_t n = g.order();
        if (n == 0) return {EtaValue(0), true, leaf(EtaRule::Empty, EtaValue(0))};
        if (g.has_isolated_vertex()) return {EtaValue::infinity(), true, leaf(EtaRule::IsolatedVertex, EtaValue::infinity())};

        const bool memoise = !root && n <= limits_.memo_cap;
        Key key;
        if (memoise) {
            key = key_of(g);
            if (auto it = memo_.find(key); it != memo_.end())
                for (const auto& e : it->second)
                    if (e.depth == depth || (e.result.complete && depth >= e.depth)) return e.result;
        }
        Result r = compute(g, depth, root);
        if (memoise) memo_[key].push_back({depth, r});
        return r;
    }

    // Picks the larger of the current best and a closed-form rule.
    static void offer(Result& best, EtaRule rule, std::int64_t value) {
        if (EtaValue(value) > best.value) best.trace = leaf(rule, EtaValue(value)), best.value = EtaValue(value);
    }

    void closed_form_rules(const DenseGraph& g, Result& best) const {
        const auto n = g.order();
        const auto delta = g.max_degree();
        if (rules_.degree) offer(best, EtaRule::DegreeRule, degree_rule_bound(n, delta));
        if (rules_.density) offer(best, EtaRule::DensityRule, density_rule_bound(n, g.edge_count(), delta));
    }

    Result compute(const DenseGraph& g, int depth, bool root) {
        auto comps = rules_.components ? g.components() : std::vector<std::vector<Vertex>>{};
        if (comps.size() > 1) {
            auto t = std::make_shared<EtaTrace>();
            t->rule = EtaRule::ComponentSum;
            bool complete = true;
            EtaValue sum(0);
            for (const auto& comp : comps) {
                auto sub = canonicalize(g.induced(mask_of(g.order(), comp)));
                Result r = eval(sub.graph, depth, false);
                sum = sum + r.value;
                complete = complete && r.complete;
                t->children.push_back(r.trace);
            }
            t->value = sum;
            Result best{sum, complete, t};
            closed_form_rules(g, best);
            best.complete = complete;
            return best;
        }

        Result best{EtaValue(1), true, leaf(EtaRule::NonEmpty, EtaValue(1))};
        if (rules_.exact_at_most_one && g.complement_disconnected())
            return {EtaValue(1), true, leaf(EtaRule::ExactAtMostOne, EtaValue(1))};
        closed_form_rules(g, best);

        if (depth == 0 || !rules_.game) {
            best.complete = false;
            return best;
        }
        bool complete = true;
        bool stopped_early = false;
        for (const auto& e : g.edges()) {
            if (best.value.is_infinite()) break;
            if (root && limits_.target && best.value >= EtaValue(*limits_.target)) {
                stopped_early = true;
                break;
            }
            auto exploded = canonicalize(explode_dense(g, e, nullptr));
            Result ex = eval(exploded.graph, depth - 1, false);
            complete = complete && ex.complete;
            EtaValue ex_plus = ex.value + EtaValue(1);
            if (ex_plus <= best.value) continue;
            auto deleted = canonicalize(delete_dense(g, e));
            Result del = eval(deleted.graph, depth - 1, false);
            complete = complete && del.complete;
            EtaValue candidate = std::min(del.value, ex_plus);
            if (candidate > best.value) {
                auto t = std::make_shared<EtaTrace>();
                t->rule = EtaRule::GameStep;
                t->value = candidate;
                t->edge = e;
                t->children = {del.trace, ex.trace};
                best.value = candidate;
                best.trace = t;
            }
        }
        best.complete = complete && (!stopped_early || best.value.is_infinite());
        return best;
    }

    EtaLimits limits_;
    EtaRules rules_;
    bool enforce_budget_ = false;
    std::uint64_t nodes_ = 0;
    std::unordered_map<Key, std::vector<Entry>, KeyHash> memo_;
};

std::optional<EtaValue> replay(const DenseGraph& g, const std::vector<Vertex>& ids, const EtaTrace& t, ResolvedTrace& out) {
    out.rule = t.rule;
    out.value = t.value;
    const auto n = g.order();
    const auto delta = g.max_degree();
    switch (t.rule) {
    case EtaRule::Empty:
        if (n == 0 && t.value == EtaValue(0)) return t.value;
        return std::nullopt;
    case EtaRule::IsolatedVertex:
        if (g.has_isolated_vertex() && t.value.is_infinite()) return t.value;
        return std::nullopt;
    case EtaRule::NonEmpty:
        if (n >= 1 && t.value == EtaValue(1)) return t.value;
        return std::nullopt;
    case EtaRule::ExactAtMostOne:
        if (n >= 1 && !g.has_isolated_vertex() && g.complement_disconnected() && t.value == EtaValue(1)) return t.value;
        return std::nullopt;
    case EtaRule::DegreeRule:
        if (n >= 1 && delta >= 1 && t.value == EtaValue(degree_rule_bound(n, delta))) return t.value;
        return std::nullopt;
    case EtaRule::DensityRule:
        if (delta >= 1 && t.value == EtaValue(density_rule_bound(n, g.edge_count(), delta))) return t.value;
        return std::nullopt;
    case EtaRule::ComponentSum: {
        auto comps = g.components();
        if (comps.size() < 2 || comps.size() != t.children.size()) return std::nullopt;
        EtaValue sum(0);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!t.children[i]) return std::nullopt;
            auto sub = canonicalize(g.induced(mask_of(n, comps[i])));
            std::vector<Vertex> sub_ids;
            for (Vertex v : sub.order) sub_ids.push_back(ids[static_cast<std::size_t>(comps[i][static_cast<std::size_t>(v)])]);
            ResolvedTrace child;
            auto v = replay(sub.graph, sub_ids, *t.children[i], child);
            if (!v) return std::nullopt;
            sum = sum + *v;
            out.children.push_back(std::move(child));
        }
        if (sum != t.value) return std::nullopt;
        return sum;
    }
    case EtaRule::GameStep: {
        if (!t.edge || t.children.size() != 2 || !t.children[0] || !t.children[1]) return std::nullopt;
        const Edge e = *t.edge;
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.v) >= n || e.u >= e.v ||
            !g.adjacent(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)))
            return std::nullopt;
        out.edge = Edge::make(ids[static_cast<std::size_t>(e.u)], ids[static_cast<std::size_t>(e.v)]);

        auto deleted = canonicalize(delete_dense(g, e));
        std::vector<Vertex> del_ids;
        for (Vertex v : deleted.order) del_ids.push_back(ids[static_cast<std::size_t>(v)]);
        ResolvedTrace del_trace;
        auto del = replay(deleted.graph, del_ids, *t.children[0], del_trace);

        std::vector<Vertex> kept;
        auto exploded = canonicalize(explode_dense(g, e, &kept));
        std::vector<Vertex> ex_ids;
        for (Vertex v : exploded.order) ex_ids.push_back(ids[static_cast<std::size_t>(kept[static_cast<std::size_t>(v)])]);
        ResolvedTrace ex_trace;
        auto ex = replay(exploded.graph, ex_ids, *t.children[1], ex_trace);

        if (!del || !ex) return std::nullopt;
        EtaValue value = std::min(*del, *ex + EtaValue(1));
        if (value != t.value) return std::nullopt;
        out.children.push_back(std::move(del_trace));
        out.children.push_back(std::move(ex_trace));
        return value;
    }
    }
    return std::nullopt;
}

} // namespace

std::string_view rule_name(EtaRule rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }

std::optional<EtaRule> rule_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kRuleNames.size(); ++i)
        if (kRuleNames[i] == name) return static_cast<EtaRule>(i);
    return std::nullopt;
}

std::int64_t degree_rule_bound(std::size_t n, std::size_t delta) {
    if (delta == 0) throw PreconditionError("degree rule needs at least one edge");
    auto den = 2 * delta;
    return static_cast<std::int64_t>((n + den - 1) / den);
}

std::int64_t density_rule_bound(std::size_t n, std::size_t m, std::size_t delta) {
    if (delta == 0) throw PreconditionError("density rule needs at least one edge");
    auto num = static_cast<std::int64_t>(delta * n) - static_cast<std::int64_t>(m);
    auto den = static_cast<std::int64_t>(delta * delta);
    // ceiling division for either sign
    return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

std::vector<Vertex> canonical_order(const DenseGraph& g) {
    const std::size_t n = g.order();
    std::vector<std::uint32_t> colour(n);
    for (std::size_t v = 0; v < n; ++v) colour[v] = static_cast<std::uint32_t>(g.degree(v));
    std::size_t classes = 0;
    std::vector<std::vector<std::uint32_t>> sig(n);
    std::vector<std::size_t> idx(n);
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.clear();
            g.row(v).for_each([&](std::size_t w) { s.push_back(colour[w]); });
            std::sort(s.begin(), s.end());
            s.insert(s.begin(), colour[v]);
        }
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
        std::vector<std::uint32_t> next(n);
        std::uint32_t rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++rank;
            next[idx[i]] = rank;
        }
        std::size_t now = n == 0 ? 0 : rank + 1;
        colour = std::move(next);
        if (now == classes) break;
        classes = now;
    }
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return colour[static_cast<std::size_t>(a)] < colour[static_cast<std::size_t>(b)]; });
    return order;
}

EtaBound eta_lower_bound(const Graph& g, const EtaLimits& limits, const EtaRules& rules) {
    auto root = canonicalize(DenseGraph(g));
    Engine engine(limits, rules);
    EtaBound out;
    // depth 0 is polynomial and always completes
    Result best = engine.run_root(root.graph, 0, false);
    out.depth_completed = 0;
    for (int depth = 1; depth <= limits.max_depth && rules.game && !best.complete; ++depth) {
        if (limits.target && best.value >= EtaValue(*limits.target)) break;
        try {
            best = engine.run_root(root.graph, depth, true);
            out.depth_completed = depth;
        } catch (const BudgetExhausted&) {
            out.budget_exhausted = true;
            break;
        }
    }
    out.value = best.value;
    out.trace = best.trace;
    out.complete = best.complete;
    out.nodes = engine.nodes();
    return out;
}

bool eta_at_most_one(const Graph& g) {
    DenseGraph d(g);
    if (d.order() == 0) throw PreconditionError("eta_at_most_one: empty graph");
    if (d.has_isolated_vertex()) throw PreconditionError("eta_at_most_one: graph has an isolated vertex");
    return d.complement_disconnected();
}

bool recognize_kdd_union(const Graph& g, std::size_t d, std::size_t k) {
    if (k == 0 || d == 0) return g.order() == 0;
    if (static_cast<std::size_t>(g.order()) != 2 * d * k || g.size() != d * d * k) return false;
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != d) return false;
    DenseGraph dg(g);
    auto comps = dg.components();
    if (comps.size() != k) return false;
    // d-regular on 2d vertices and bipartite with equal sides forces K_{d,d}
    std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
    for (const auto& comp : comps) {
        if (comp.size() != 2 * d) return false;
        std::vector<Vertex> stack{comp.front()};
        side[static_cast<std::size_t>(comp.front())] = 0;
        std::size_t zeros = 0;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (side[static_cast<std::size_t>(v)] == 0) ++zeros;
            for (Vertex w : g.neighbours(v)) {
                auto& s = side[static_cast<std::size_t>(w)];
                if (s == -1) {
                    s = 1 - side[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (s == side[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
        if (zeros != d) return false;
    }
    return true;
}

std::optional<ResolvedTrace> resolve_trace(const Graph& g, const EtaTrace& trace) {
    auto root = canonicalize(DenseGraph(g));
    ResolvedTrace out;
    if (!replay(root.graph, root.order, trace, out)) return std::nullopt;
    return out;
}

} // namespace itlab
