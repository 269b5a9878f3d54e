#include "itlab/structure.hpp"

#include <algorithm>

#include "itlab/dense_graph.hpp"
#include "itlab/error.hpp"

namespace itlab {
namespace {

// The current graph during extraction, kept on the original vertex ids.
class Residual {
public:
    explicit Residual(const Graph& g) : g_(g), alive_(static_cast<std::size_t>(g.order())) { alive_.set_all(); }

    const DenseGraph& graph() const noexcept { return g_; }
    const VertexSet& alive() const noexcept { return alive_; }
    const VertexSet& row(Vertex v) const { return g_.row(static_cast<std::size_t>(v)); }
    bool has_edge() const {
        for (std::size_t v = alive_.first(); v != VertexSet::npos; v = alive_.next(v))
            if (g_.row(v).any()) return true;
        return false;
    }
    bool adjacent(Edge e) const { return g_.adjacent(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)); }

    VertexSet killed_by(Edge e) const { return row(e.u) | row(e.v); }

    void kill(const VertexSet& dead) {
        dead.for_each([&](std::size_t v) {
            VertexSet nb = g_.row(v);
            nb.for_each([&](std::size_t w) { g_.remove_edge(v, w); });
            alive_.reset(v);
        });
    }
    void remove_edge(Edge e) { g_.remove_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)); }

    /// The current graph renumbered onto its live vertices.
    Graph compact() const { return g_.induced(alive_).to_graph(); }

    /// Edge whose explosion kills the fewest vertices, ties lexicographic.
    Edge min_kill_edge() const {
        Edge best{};
        std::size_t best_kill = VertexSet::npos;
        for (const Edge& e : g_.edges()) {
            std::size_t kill = (row(e.u) | row(e.v)).count();
            if (kill < best_kill) best_kill = kill, best = e;
        }
        return best;
    }

private:
    DenseGraph g_;
    VertexSet alive_;
};

std::vector<Vertex> as_list(const VertexSet& s) {
    std::vector<Vertex> out;
    s.for_each([&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
    return out;
}

EtaValue bound_of(const Graph& g, const EtaLimits& limits) { return eta_lower_bound(g, limits).value; }

// Deletes, in order, each edge e with lb(G − e) ≤ lb(G).
void reduce(Residual& res, const ExtractOptions& options, std::vector<ScheduleStep>& schedule) {
    if (options.policy == DeletionPolicy::None || !res.has_edge()) return;
    EtaValue current = bound_of(res.compact(), options.eta);
    if (current.is_infinite()) return;
    for (const Edge& e : res.graph().edges()) {
        Residual trial = res;
        trial.remove_edge(e);
        EtaValue after = bound_of(trial.compact(), options.eta);
        if (after <= current) {
            res = std::move(trial);
            schedule.push_back({ScheduleStep::Op::Delete, e});
            current = after;
        }
    }
}

Triple triple_for(const Residual& res, Edge e) {
    const VertexSet& nx = res.row(e.u);
    const VertexSet& ny = res.row(e.v);
    VertexSet z = nx & ny;
    return {as_list(ny - z), as_list(nx - z), as_list(z), e.u, e.v};
}

std::int64_t edges_between(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<char> in_b(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v : b) in_b[static_cast<std::size_t>(v)] = 1;
    std::int64_t count = 0;
    for (Vertex v : a)
        for (Vertex w : g.neighbours(v)) count += in_b[static_cast<std::size_t>(w)];
    return count;
}

bool all_adjacent(const Graph& g, Vertex v, const std::vector<Vertex>& set) {
    return std::all_of(set.begin(), set.end(), [&](Vertex w) { return g.adjacent(v, w); });
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

std::int64_t sz(const std::vector<Vertex>& s) { return static_cast<std::int64_t>(s.size()); }

Rational r64(std::int64_t x) { return Rational(static_cast<long long>(x)); }

} // namespace

BasicPartition extract_basic_partition(const Graph& g, const ExtractOptions& options) {
    BasicPartition bp;
    Residual res(g);
    reduce(res, options, bp.schedule);
    while (res.has_edge()) {
        Edge e = res.min_kill_edge();
        bp.triples.push_back(triple_for(res, e));
        res.kill(res.killed_by(e));
        bp.schedule.push_back({ScheduleStep::Op::Explode, e});
        reduce(res, options, bp.schedule);
    }
    bp.unassigned = as_list(res.alive());
    return bp;
}

BasicCheck verify_basic(const Graph& g, const BasicPartition& bp) {
    BasicCheck out;
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<int> hits(n, 0);
    bool in_range = true;
    auto mark = [&](const std::vector<Vertex>& s) {
        for (Vertex v : s) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) in_range = false;
            else ++hits[static_cast<std::size_t>(v)];
        }
    };
    for (const auto& t : bp.triples) mark(t.x), mark(t.y), mark(t.z);
    mark(bp.unassigned);
    out.partition = in_range && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    if (!in_range) throw PreconditionError("verify_basic: partition names a vertex outside the graph");

    std::int64_t lhs = 0, rhs = 2 * static_cast<std::int64_t>(g.size());
    for (std::size_t i = 0; i < bp.triples.size(); ++i) {
        const auto& t = bp.triples[i];
        bool ok = contains(t.x, t.x_witness) && contains(t.y, t.y_witness) && all_adjacent(g, t.x_witness, t.y) &&
                  all_adjacent(g, t.x_witness, t.z) && all_adjacent(g, t.y_witness, t.x) && all_adjacent(g, t.y_witness, t.z);
        if (!ok) out.failing.push_back(i);
        lhs += 4 * sz(t.x) * sz(t.y) + (sz(t.x) + sz(t.y)) * sz(t.z);
        rhs += 2 * edges_between(g, t.x, t.y);
    }
    out.cond_a = out.failing.empty();
    out.cond_b_slack = rhs - lhs;
    return out;
}

TechlemCheck techlem_check(const Graph& g, const BasicPartition& bp) {
    const auto d = static_cast<std::int64_t>(g.max_degree());
    const auto n = static_cast<std::int64_t>(g.order());
    const auto k = static_cast<std::int64_t>(bp.k());
    std::int64_t q = 0, zterm = 0;
    for (const auto& t : bp.triples) {
        q += sz(t.x) * sz(t.y) - edges_between(g, t.x, t.y);
        zterm += sz(t.z) * (2 * d - sz(t.x) - sz(t.y) - 2 * sz(t.z));
    }
    std::int64_t rhs = 2 * q + 2 * d * n - 2 * d * d * k + zterm;
    return {2 * static_cast<std::int64_t>(g.size()) - rhs, q};
}

std::int64_t dense_check(const Graph& g, std::int64_t k) {
    const auto d = static_cast<std::int64_t>(g.max_degree());
    return static_cast<std::int64_t>(g.size()) - (d * static_cast<std::int64_t>(g.order()) - d * d * k);
}

StabilityReport stability_report(const Graph& g, std::size_t k, const BasicPartition& bp) {
    if (bp.k() > k) throw PreconditionError("stability_report: partition has more than k triples");
    if (g.order() == 0) throw PreconditionError("stability_report: empty graph");
    StabilityReport r;
    r.n = static_cast<std::size_t>(g.order());
    r.d = g.max_degree();
    r.k = k;
    const auto n = static_cast<std::int64_t>(r.n), d = static_cast<std::int64_t>(r.d);
    const auto e = static_cast<std::int64_t>(g.size());
    r.epsilon = Rational(2 * d * static_cast<std::int64_t>(k), n) - 1;
    std::int64_t inside = 0, product = 0;
    for (const auto& t : bp.triples) {
        r.z += sz(t.z);
        inside += edges_between(g, t.x, t.y);
        product += sz(t.x) * sz(t.y);
        r.approximant.emplace_back(t.x, t.y);
    }
    r.approximant.resize(k);
    r.m = e - inside;
    r.q = product - inside;
    r.sym_diff = r.m + r.q;
    r.gamma = e == 0 ? Rational(0) : Rational(r.sym_diff, e);
    const Rational eps = r.epsilon;
    r.hypothesis_impossible = eps < 0;
    r.z_ok = r64(r.z) <= eps * r64(n);
    r.m_ok = r64(r.m) <= 2 * eps * r64(d * n);
    r.q_ok = r64(r.q) <= eps * r64(d * n) / 2;
    r.edges_ok = r64(2 * e) >= r64(d * n) * (1 - eps);
    return r;
}

Key2Result key2_extract(const Graph& g, std::size_t k, const Rational& gamma, const ExtractOptions& options) {
    if (!(gamma > 3)) throw PreconditionError("key2_extract: gamma must exceed 3");
    if (k == 0) throw PreconditionError("key2_extract: k must be positive");
    const auto d = static_cast<std::int64_t>(g.max_degree());
    const Rational theta = (gamma - 3) / (1 + gamma);
    if (d == 0) {
        // nothing to explode; ε and ζ divide by d and are left at zero
        Key2Result empty;
        for (Vertex v = 0; v < g.order(); ++v) empty.partition.unassigned.push_back(v);
        empty.report.theta = theta;
        return empty;
    }
    const Rational low_cut = theta * r64(d);

    Key2Result out;
    auto& bp = out.partition;
    VertexSet w(static_cast<std::size_t>(g.order()));
    Residual res(g);
    reduce(res, options, bp.schedule);

    auto explode_into_w = [&](Edge e) {
        VertexSet dead = res.killed_by(e);
        w |= dead;
        res.kill(dead);
        bp.schedule.push_back({ScheduleStep::Op::Explode, e});
        reduce(res, options, bp.schedule);
    };

    while (res.has_edge()) {
        const Edge xy = res.min_kill_edge();
        const VertexSet nx = res.row(xy.u);
        const VertexSet ny = res.row(xy.v);
        const VertexSet zs = nx & ny;
        const VertexSet xs = ny - zs;
        const VertexSet ys = nx - zs;

        // a low vertex on one side with a non-neighbour on the other
        bool branched = false;
        for (int side = 0; side < 2 && !branched; ++side) {
            const VertexSet& mine = side == 0 ? xs : ys;
            const VertexSet& other = side == 0 ? ys : xs;
            const VertexSet& anchor_nb = side == 0 ? nx : ny;
            const Vertex anchor = side == 0 ? xy.u : xy.v;
            for (std::size_t wv = mine.first(); wv != VertexSet::npos && !branched; wv = mine.next(wv)) {
                const VertexSet& nw = res.row(static_cast<Vertex>(wv));
                if (!(r64(static_cast<std::int64_t>(nw.count_minus(anchor_nb))) < low_cut)) continue;
                VertexSet candidates = other - nw;
                std::size_t u = candidates.first();
                if (u == VertexSet::npos) continue;
                branched = true;
                explode_into_w(Edge::make(anchor, static_cast<Vertex>(u)));
                const VertexSet& nw_now = res.row(static_cast<Vertex>(wv));
                std::size_t v = nw_now.first();
                if (res.alive().test(wv) && v != VertexSet::npos) explode_into_w(Edge::make(static_cast<Vertex>(wv), static_cast<Vertex>(v)));
            }
        }
        if (branched) continue;

        bp.triples.push_back(triple_for(res, xy));
        res.kill(res.killed_by(xy));
        bp.schedule.push_back({ScheduleStep::Op::Explode, xy});
        reduce(res, options, bp.schedule);
    }
    bp.unassigned = as_list(res.alive());

    auto& rep = out.report;
    rep.k0 = bp.k();
    rep.w = as_list(w);
    const auto n = static_cast<std::int64_t>(g.order());
    const auto kk = static_cast<std::int64_t>(k);
    const Rational dk = r64(d * kk);
    rep.epsilon = 2 - Rational(n, d * kk);
    rep.theta = theta;
    std::int64_t zsum = 0;
    for (const auto& t : bp.triples) {
        zsum += sz(t.z);
        for (Vertex v : t.x) rep.conforming += all_adjacent(g, v, t.y) && all_adjacent(g, v, t.z);
        for (Vertex v : t.y) rep.conforming += all_adjacent(g, v, t.x) && all_adjacent(g, v, t.z);
    }
    rep.nonconforming = static_cast<std::size_t>(n) - rep.conforming;
    rep.zeta = Rational(zsum) / dk;
    const Rational slack = rep.epsilon - rep.zeta;
    rep.zeta_le_epsilon = rep.zeta <= rep.epsilon;
    rep.k_gap_ok = r64(kk - static_cast<std::int64_t>(rep.k0)) <= (1 + gamma) / 4 * slack * r64(kk);
    rep.w_ok = r64(sz(rep.w)) <= gamma * slack * dk;
    rep.u_bound = (gamma * gamma - 1) / (gamma * gamma - 3 * gamma) * r64(sz(rep.w)) + (1 + gamma) / (gamma - 3) * rep.epsilon * dk;
    rep.u_ok = r64(static_cast<std::int64_t>(rep.nonconforming)) <= rep.u_bound;
    return out;
}

EtaValue schedule_bound(const Graph& g, const BasicPartition& bp, const EtaLimits& limits) {
    std::vector<Residual> states{Residual(g)};
    for (const auto& step : bp.schedule) {
        Residual next = states.back();
        if (!next.adjacent(step.edge)) throw PreconditionError("schedule_bound: schedule names a missing edge");
        if (step.op == ScheduleStep::Op::Delete) next.remove_edge(step.edge);
        else next.kill(next.killed_by(step.edge));
        states.push_back(std::move(next));
    }
    EtaValue value = bound_of(states.back().compact(), limits);
    for (std::size_t i = bp.schedule.size(); i-- > 0;) {
        const auto& step = bp.schedule[i];
        Residual other = states[i];
        if (step.op == ScheduleStep::Op::Explode) {
            other.remove_edge(step.edge);
            value = std::min(bound_of(other.compact(), limits), value + EtaValue(1));
        } else {
            other.kill(other.killed_by(step.edge));
            value = std::min(value, bound_of(other.compact(), limits) + EtaValue(1));
        }
    }
    return value;
}

} // namespace itlab
