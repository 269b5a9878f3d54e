#include "itlab/construct.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace itlab {
namespace {

std::string vid(Vertex v) { return std::to_string(v + 1); }

CertificatePtr make_leaf(std::size_t a, std::size_t b, std::vector<Vertex> a_side, std::vector<Vertex> b_side) {
    auto leaf = std::make_shared<NoItCertificate>();
    leaf->kind = NoItCertificate::Kind::Leaf;
    leaf->a = a;
    leaf->b = b;
    leaf->a_side = std::move(a_side);
    leaf->b_side = std::move(b_side);
    return leaf;
}

CertificatePtr make_join(CertificatePtr left, CertificatePtr right, BlockId absorbed,
                         std::vector<std::pair<Vertex, BlockId>> distribution) {
    auto node = std::make_shared<NoItCertificate>();
    node->kind = NoItCertificate::Kind::Join;
    node->left = std::move(left);
    node->right = std::move(right);
    node->absorbed = absorbed;
    std::sort(distribution.begin(), distribution.end());
    node->distribution = std::move(distribution);
    return node;
}

CertificatePtr shifted(const CertificatePtr& cert, Vertex offset) {
    if (offset == 0) return cert;
    if (cert->kind == NoItCertificate::Kind::Leaf) {
        auto a = cert->a_side, b = cert->b_side;
        for (auto& v : a) v += offset;
        for (auto& v : b) v += offset;
        return make_leaf(cert->a, cert->b, std::move(a), std::move(b));
    }
    auto dist = cert->distribution;
    for (auto& [v, blk] : dist) v += offset;
    return make_join(shifted(cert->left, offset), shifted(cert->right, offset), cert->absorbed, std::move(dist));
}

Integer floor_times(const Rational& x, std::size_t t) { return floor_of(x * Rational(static_cast<long long>(t))); }

std::size_t floor_alpha_t(const Rational& alpha, std::size_t t) {
    return static_cast<std::size_t>(floor_times(alpha, t).convert_to<long long>());
}

Rational rat(std::size_t x) { return Rational(static_cast<long long>(x)); }

void check_domain(std::size_t t, const Rational& alpha, const Rational& beta) {
    if (t < 1) throw FeasibilityError("domain", "t must be at least 1");
    if (!(beta > 0) || beta > alpha)
        throw FeasibilityError("domain", "need 0 < beta <= alpha, got alpha=" + to_string(alpha) + " beta=" + to_string(beta));
}

// Fenwick tree over gadget indices that can grow at the end.
class GrowingFenwick {
public:
    void push_back(long long value) {
        raw_.push_back(0);
        if (raw_.size() > tree_.size()) grow();
        add(raw_.size() - 1, value);
    }
    void add(std::size_t i, long long delta) {
        raw_[i] += delta;
        for (std::size_t k = i + 1; k <= tree_.size(); k += k & (~k + 1)) tree_[k - 1] += delta;
    }
    long long prefix(std::size_t count) const { // sum of raw_[0..count)
        long long s = 0;
        for (std::size_t k = count; k > 0; k -= k & (~k + 1)) s += tree_[k - 1];
        return s;
    }
    long long total() const { return prefix(raw_.size()); }

private:
    void grow() {
        tree_.assign(std::max<std::size_t>(16, tree_.size() * 2), 0);
        for (std::size_t i = 0; i < raw_.size(); ++i)
            for (std::size_t k = i + 1; k <= tree_.size(); k += k & (~k + 1)) tree_[k - 1] += raw_[i];
    }
    std::vector<long long> raw_;
    std::vector<long long> tree_;
};

// Builds a chain of joins where every step places a new K_{a,b} in front and
// absorbs one existing block into it. Produces exactly what repeated calls to
// join(gadget, current, ...) would, without copying the graph each time.
// Block handle 2g / 2g+1 is the A / B side of gadget g.
class ChainBuilder {
public:
    ChainBuilder(std::size_t a, std::size_t b) { add_gadget(a, b); }

    using Handle = std::size_t;

    std::size_t block_size(Handle h) const { return members_[h].size(); }
    bool live(Handle h) const { return live_[h] != 0; }
    std::size_t gadget_count() const { return gadgets_.size(); }

    std::size_t degree(Vertex v) const {
        const auto& g = gadgets_[vertex_gadget_[static_cast<std::size_t>(v)]];
        return static_cast<std::size_t>(v - g.first) < g.a ? g.b : g.a;
    }

    // Members in the current (and final) vertex order.
    std::vector<Vertex> ordered_members(Handle h) const {
        auto out = members_[h];
        std::sort(out.begin(), out.end(), [&](Vertex x, Vertex y) { return before(x, y); });
        return out;
    }

    // Position of h in the current block list.
    std::size_t rank(Handle h) const {
        std::size_t g = h / 2;
        long long later = fenwick_.total() - fenwick_.prefix(g + 1);
        return static_cast<std::size_t>(later) + ((h % 2 == 1 && live_[2 * g]) ? 1 : 0);
    }

    /// New K_{a,b} in front; the i-th member of `absorbed` (in vertex order)
    /// goes to side[i] (0 = A, 1 = B). Returns the new gadget index.
    std::size_t absorb(std::size_t a, std::size_t b, Handle absorbed, const std::vector<int>& side) {
        auto moving = ordered_members(absorbed);
        if (side.size() != moving.size()) throw std::logic_error("ChainBuilder: distribution size mismatch");
        JoinRecord rec;
        rec.absorbed_rank = rank(absorbed);
        std::size_t g = add_gadget(a, b);
        for (std::size_t i = 0; i < moving.size(); ++i) {
            members_[2 * g + static_cast<std::size_t>(side[i])].push_back(moving[i]);
            rec.distribution.emplace_back(moving[i], side[i]);
        }
        members_[absorbed].clear();
        live_[absorbed] = 0;
        fenwick_.add(absorbed / 2, -1);
        joins_.push_back(std::move(rec));
        return g;
    }

    CertifiedInstance finalize() const {
        std::vector<Vertex> final_id(vertex_gadget_.size());
        Vertex next = 0;
        for (std::size_t g = gadgets_.size(); g-- > 0;)
            for (std::size_t i = 0; i < gadgets_[g].a + gadgets_[g].b; ++i)
                final_id[static_cast<std::size_t>(gadgets_[g].first) + i] = next++;

        std::vector<Edge> edges;
        std::vector<CertificatePtr> leaves;
        for (const auto& gd : gadgets_) {
            std::vector<Vertex> as, bs;
            for (std::size_t i = 0; i < gd.a; ++i) as.push_back(final_id[static_cast<std::size_t>(gd.first) + i]);
            for (std::size_t i = 0; i < gd.b; ++i) bs.push_back(final_id[static_cast<std::size_t>(gd.first) + gd.a + i]);
            for (Vertex x : as)
                for (Vertex y : bs) edges.push_back(Edge::make(x, y));
            leaves.push_back(make_leaf(gd.a, gd.b, std::move(as), std::move(bs)));
        }

        std::vector<BlockId> block_of(vertex_gadget_.size(), -1);
        BlockId block = 0;
        for (std::size_t g = gadgets_.size(); g-- > 0;)
            for (std::size_t side = 0; side < 2; ++side) {
                Handle h = 2 * g + side;
                if (!live_[h]) continue;
                for (Vertex v : members_[h]) block_of[static_cast<std::size_t>(final_id[static_cast<std::size_t>(v)])] = block;
                ++block;
            }

        CertificatePtr cert = leaves[0];
        for (std::size_t g = 1; g < gadgets_.size(); ++g) {
            const auto& rec = joins_[g - 1];
            std::vector<std::pair<Vertex, BlockId>> dist;
            for (auto [v, s] : rec.distribution) dist.emplace_back(final_id[static_cast<std::size_t>(v)], s);
            cert = make_join(leaves[g], cert, static_cast<BlockId>(rec.absorbed_rank), std::move(dist));
        }
        Graph graph = Graph::from_edges(next, edges);
        return {PartitionedGraph(std::move(graph), std::move(block_of)), cert};
    }

private:
    struct Gadget {
        std::size_t a, b;
        Vertex first;
    };
    struct JoinRecord {
        std::size_t absorbed_rank = 0;
        std::vector<std::pair<Vertex, BlockId>> distribution;
    };

    bool before(Vertex x, Vertex y) const {
        auto gx = vertex_gadget_[static_cast<std::size_t>(x)], gy = vertex_gadget_[static_cast<std::size_t>(y)];
        return gx != gy ? gx > gy : x < y;
    }

    std::size_t add_gadget(std::size_t a, std::size_t b) {
        std::size_t g = gadgets_.size();
        Vertex first = static_cast<Vertex>(vertex_gadget_.size());
        gadgets_.push_back({a, b, first});
        members_.emplace_back();
        members_.emplace_back();
        for (std::size_t i = 0; i < a + b; ++i) {
            vertex_gadget_.push_back(g);
            members_[2 * g + (i < a ? 0 : 1)].push_back(first + static_cast<Vertex>(i));
        }
        live_.push_back(1);
        live_.push_back(1);
        fenwick_.push_back(2);
        return g;
    }

    std::vector<Gadget> gadgets_;
    std::vector<std::vector<Vertex>> members_;
    std::vector<char> live_;
    std::vector<std::size_t> vertex_gadget_;
    GrowingFenwick fenwick_;
    std::vector<JoinRecord> joins_;
};

// Builds the layered instance; returns the handles of the final terminal blocks.
std::vector<ChainBuilder::Handle> build_layered(ChainBuilder& builder, const LayerSequence& seq) {
    const auto t = seq.t;
    const auto& d = seq.d;
    ChainBuilder::Handle initial = 0;
    std::vector<ChainBuilder::Handle> terminals{1};
    for (std::size_t i = 1; i < t; ++i) {
        auto g = builder.absorb(1, d[0], initial, std::vector<int>(builder.block_size(initial), 0));
        initial = 2 * g;
        terminals.push_back(2 * g + 1);
    }
    for (std::size_t j = 1; j < d.size(); ++j) {
        std::sort(terminals.begin(), terminals.end(),
                  [&](auto x, auto y) { return builder.rank(x) < builder.rank(y); });
        std::vector<ChainBuilder::Handle> next;
        for (auto x : terminals) {
            auto cur = x;
            for (std::size_t i = 0; i < t - d[j - 1]; ++i) {
                auto g = builder.absorb(1, d[j], cur, std::vector<int>(builder.block_size(cur), 0));
                cur = 2 * g;
                next.push_back(2 * g + 1);
            }
        }
        terminals = std::move(next);
    }
    return terminals;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("generated instance violates " + what);
}

} // namespace

bool operator==(const NoItCertificate& x, const NoItCertificate& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == NoItCertificate::Kind::Leaf)
        return x.a == y.a && x.b == y.b && x.a_side == y.a_side && x.b_side == y.b_side;
    if (x.absorbed != y.absorbed || x.distribution != y.distribution) return false;
    if (!x.left || !y.left || !x.right || !y.right) return x.left == y.left && x.right == y.right;
    return *x.left == *y.left && *x.right == *y.right;
}

CertifiedInstance complete_bipartite_gadget(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) throw PreconditionError("gadget sides must be nonempty");
    std::vector<Edge> edges;
    std::vector<Vertex> as, bs;
    std::vector<BlockId> block_of;
    for (std::size_t i = 0; i < a; ++i) as.push_back(static_cast<Vertex>(i)), block_of.push_back(0);
    for (std::size_t i = 0; i < b; ++i) bs.push_back(static_cast<Vertex>(a + i)), block_of.push_back(1);
    for (Vertex x : as)
        for (Vertex y : bs) edges.push_back({x, y});
    Graph g = Graph::from_edges(static_cast<Vertex>(a + b), edges);
    return {PartitionedGraph(std::move(g), std::move(block_of)), make_leaf(a, b, std::move(as), std::move(bs))};
}

CertifiedInstance join(const CertifiedInstance& left, const CertifiedInstance& right, BlockId absorbed,
                       const std::vector<std::pair<Vertex, BlockId>>& distribution) {
    const auto& lg = left.pg.graph();
    const auto& rg = right.pg.graph();
    const Vertex nl = lg.order();
    const BlockId rl = left.pg.block_count();
    if (absorbed < 0 || absorbed >= right.pg.block_count())
        throw PreconditionError("join: absorbed block " + std::to_string(absorbed + 1) + " does not exist");

    std::vector<BlockId> target(static_cast<std::size_t>(rg.order()), -1);
    for (auto [v, blk] : distribution) {
        if (v < 0 || v >= rg.order() || right.pg.block_of(v) != absorbed)
            throw PreconditionError("join: vertex " + vid(v) + " is not in the absorbed block");
        if (blk < 0 || blk >= rl) throw PreconditionError("join: target block " + std::to_string(blk + 1) + " does not exist");
        if (target[static_cast<std::size_t>(v)] != -1) throw PreconditionError("join: vertex " + vid(v) + " distributed twice");
        target[static_cast<std::size_t>(v)] = blk;
    }
    if (distribution.size() != right.pg.block_size(absorbed))
        throw PreconditionError("join: distribution does not cover the absorbed block");

    std::vector<Edge> edges = lg.edges();
    for (const auto& e : rg.edges()) edges.push_back({e.u + nl, e.v + nl});
    std::vector<BlockId> block_of(left.pg.block_assignment().begin(), left.pg.block_assignment().end());
    for (Vertex v = 0; v < rg.order(); ++v) {
        BlockId b = right.pg.block_of(v);
        block_of.push_back(b == absorbed ? target[static_cast<std::size_t>(v)] : rl + (b < absorbed ? b : b - 1));
    }
    Graph g = Graph::from_edges(nl + rg.order(), edges);

    std::vector<std::pair<Vertex, BlockId>> dist;
    for (auto [v, blk] : distribution) dist.emplace_back(v + nl, blk);
    return {PartitionedGraph(std::move(g), std::move(block_of)),
            make_join(left.cert, shifted(right.cert, nl), absorbed, std::move(dist))};
}

CertificateCheck check_certificate(const PartitionedGraph& pg, const NoItCertificate& cert) {
    const auto& g = pg.graph();
    const auto n = static_cast<std::size_t>(g.order());
    using BlockList = std::vector<std::vector<Vertex>>;

    struct Frame {
        const NoItCertificate* node;
        int stage;
    };
    std::vector<Frame> stack{{&cert, 0}};
    std::vector<char> path;
    std::vector<BlockList> results;
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    std::size_t leaf_edges = 0;

    auto fail = [&](const std::string& why) {
        std::string where = "root";
        for (std::size_t i = 0; i < path.size();) {
            std::size_t j = i;
            while (j < path.size() && path[j] == path[i]) ++j;
            where += path[i] == 'L' ? ".left" : ".right";
            if (j - i > 1) where += "^" + std::to_string(j - i);
            i = j;
        }
        return CertificateCheck{false, where + ": " + why};
    };

    while (!stack.empty()) {
        Frame& f = stack.back();
        const NoItCertificate& node = *f.node;
        if (node.kind == NoItCertificate::Kind::Leaf) {
            if (node.a < 1 || node.b < 1) return fail("leaf sides must be nonempty");
            if (node.a_side.size() != node.a || node.b_side.size() != node.b) return fail("leaf side sizes differ from a, b");
            for (const auto* side : {&node.a_side, &node.b_side})
                for (Vertex v : *side) {
                    if (v < 0 || static_cast<std::size_t>(v) >= n) return fail("vertex " + vid(v) + " out of range");
                    if (seen[static_cast<std::size_t>(v)]) return fail("vertex " + vid(v) + " appears in two leaves");
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++covered;
                }
            for (Vertex x : node.a_side)
                for (Vertex y : node.b_side)
                    if (!g.adjacent(x, y)) return fail("leaf edge {" + vid(x) + "," + vid(y) + "} missing");
            leaf_edges += node.a * node.b;
            results.push_back({node.a_side, node.b_side});
        } else if (f.stage == 0) {
            if (!node.left || !node.right) return fail("join is missing a child");
            f.stage = 1;
            stack.push_back({node.left.get(), 0});
            path.push_back('L');
            continue;
        } else if (f.stage == 1) {
            f.stage = 2;
            stack.push_back({node.right.get(), 0});
            path.push_back('R');
            continue;
        } else {
            BlockList right = std::move(results.back());
            results.pop_back();
            BlockList left = std::move(results.back());
            results.pop_back();
            if (node.absorbed < 0 || static_cast<std::size_t>(node.absorbed) >= right.size())
                return fail("absorbed block " + std::to_string(node.absorbed + 1) + " out of range");
            auto absorbed = right[static_cast<std::size_t>(node.absorbed)];
            std::sort(absorbed.begin(), absorbed.end());
            std::vector<Vertex> keys;
            for (auto [v, blk] : node.distribution) {
                if (blk < 0 || static_cast<std::size_t>(blk) >= left.size())
                    return fail("distribution target " + std::to_string(blk + 1) + " out of range");
                keys.push_back(v);
            }
            std::sort(keys.begin(), keys.end());
            if (keys != absorbed) return fail("distribution does not match the absorbed block");
            for (auto [v, blk] : node.distribution) left[static_cast<std::size_t>(blk)].push_back(v);
            right.erase(right.begin() + node.absorbed);
            for (auto& blk : right) left.push_back(std::move(blk));
            results.push_back(std::move(left));
        }
        stack.pop_back();
        if (!path.empty()) path.pop_back();
    }

    if (covered != n) return fail("leaves cover " + std::to_string(covered) + " of " + std::to_string(n) + " vertices");
    if (leaf_edges != g.size())
        return fail("graph has " + std::to_string(g.size()) + " edges but leaves account for " + std::to_string(leaf_edges));
    const auto& blocks = results.back();
    if (blocks.size() != static_cast<std::size_t>(pg.block_count()))
        return fail("certificate yields " + std::to_string(blocks.size()) + " blocks, graph has " +
                    std::to_string(pg.block_count()));
    std::vector<char> used(blocks.size(), 0);
    for (const auto& blk : blocks) {
        BlockId b = pg.block_of(blk.front());
        for (Vertex v : blk)
            if (pg.block_of(v) != b) return fail("vertices " + vid(blk.front()) + " and " + vid(v) + " are in different blocks");
        if (used[static_cast<std::size_t>(b)]) return fail("block " + std::to_string(b + 1) + " is split");
        used[static_cast<std::size_t>(b)] = 1;
    }
    return {true, {}};
}

LayerSequence sequence(std::size_t t, const Rational& alpha, const Rational& beta,
                       const std::optional<std::vector<std::size_t>>& override_d) {
    check_domain(t, alpha, beta);
    const std::size_t dk = std::min(t, floor_alpha_t(alpha, t));
    if (dk < 1) throw FeasibilityError("sequence", "min(t, floor(alpha t)) = 0");
    LayerSequence seq{t, alpha, beta, {}};
    if (override_d) {
        seq.d = *override_d;
        if (seq.d.empty() || seq.d.front() < 1) throw FeasibilityError("sequence", "d_1 must be at least 1");
        for (std::size_t j = 1; j < seq.d.size(); ++j)
            if (seq.d[j] <= seq.d[j - 1]) throw FeasibilityError("sequence", "sequence must be strictly increasing");
        if (seq.d.back() != dk) throw FeasibilityError("sequence", "last term must be min(t, floor(alpha t)) = " + std::to_string(dk));
    } else {
        auto d1 = static_cast<std::size_t>(floor_times(beta, t).convert_to<long long>());
        if (d1 < 1) throw FeasibilityError("sequence", "d_1 = floor(beta t) = 0");
        for (std::size_t x = std::min(d1, dk); x <= dk; ++x) seq.d.push_back(x);
    }
    const Rational bt = beta * rat(t);
    std::size_t prev = 0;
    for (std::size_t j = 0; j < seq.d.size(); ++j) {
        std::size_t nextd = seq.d[j];
        Rational avg = (rat(prev) + rat(t - prev) * rat(nextd)) / rat(t);
        if (avg > bt)
            throw FeasibilityError("sequence", "j=" + std::to_string(j) + ": (1/" + std::to_string(t) + ")(" + std::to_string(prev) +
                                                   " + " + std::to_string(t - prev) + "*" + std::to_string(nextd) + ") = " +
                                                   to_string(avg) + " > " + to_string(bt));
        prev = nextd;
    }
    return seq;
}

CertifiedInstance gen_layered(std::size_t t, const Rational& alpha, const Rational& beta,
                              const std::optional<std::vector<std::size_t>>& override_d) {
    auto seq = sequence(t, alpha, beta, override_d);
    ChainBuilder builder(1, seq.d[0]);
    build_layered(builder, seq);
    auto out = builder.finalize();

    auto stats = block_stats(out.pg);
    const auto dk = seq.d.back();
    for (BlockId b = 0; b < out.pg.block_count(); ++b) {
        if (out.pg.block_size(b) >= t) continue;
        require(out.pg.block_size(b) == dk, "(a'): deficient block size");
        for (Vertex v : out.pg.block(b)) require(out.pg.graph().degree(v) == 1, "(a'): deficient vertex degree");
    }
    require(stats.delta == dk && rat(dk) <= alpha * rat(t), "(b): maximum degree");
    require(stats.b <= beta * rat(t), "(c): block average degree");
    return out;
}

CertifiedInstance augment_step(const CertifiedInstance& in, BlockId u, std::size_t t, const Rational& alpha, std::size_t c) {
    if (u < 0 || u >= in.pg.block_count()) throw PreconditionError("augment_step: block " + std::to_string(u + 1) + " does not exist");
    const std::size_t fa = floor_alpha_t(alpha, t);
    const std::size_t size = in.pg.block_size(u);
    if (c < 1 || c > fa || fa >= t) throw PreconditionError("augment_step: need 1 <= C <= floor(alpha t) < t");
    if (size >= t) throw PreconditionError("augment_step: block " + std::to_string(u + 1) + " is not deficient");
    if (size < fa) throw PreconditionError("augment_step: block smaller than floor(alpha t)");
    const std::size_t cap = t - fa + c;
    std::vector<Vertex> members(in.pg.block(u).begin(), in.pg.block(u).end());
    std::sort(members.begin(), members.end());
    for (Vertex v : members)
        if (in.pg.graph().degree(v) > cap)
            throw PreconditionError("augment_step: vertex " + vid(v) + " has degree " + std::to_string(in.pg.graph().degree(v)) +
                                    " > " + std::to_string(cap));
    std::vector<std::pair<Vertex, BlockId>> dist;
    for (std::size_t i = 0; i < members.size(); ++i) dist.emplace_back(members[i], i < fa - c ? 0 : 1);
    return join(complete_bipartite_gadget(cap, fa), in, u, dist);
}

CertifiedInstance gen_augmented(std::size_t t, const Rational& alpha, const Rational& beta, const AugmentOptions& options) {
    check_domain(t, alpha, beta);
    const Rational half(1, 2), quarter(1, 4);
    const Rational beta_prime = std::max(quarter, 2 * alpha * (1 - alpha));
    if (!(alpha > half)) throw FeasibilityError("relevance", "alpha = " + to_string(alpha) + " <= 1/2");
    if (!(beta > quarter)) throw FeasibilityError("relevance", "beta = " + to_string(beta) + " <= 1/4");
    if (!(beta > 2 * alpha * (1 - alpha)))
        throw FeasibilityError("relevance", "beta = " + to_string(beta) + " <= 2 alpha (1 - alpha) = " + to_string(2 * alpha * (1 - alpha)));

    auto seq = sequence(t, alpha, beta, options.sequence);
    const std::size_t fa = floor_alpha_t(alpha, t);
    const Rational bt = beta * rat(t);
    const std::size_t c = options.c;
    std::size_t single_a = 0;

    if (fa < t) {
        if (options.strategy == AugmentStrategy::Step) {
            if (c < 1) throw FeasibilityError("gadget-size", "C must be at least 1");
            if (fa < c + 1) throw FeasibilityError("gadget-size", "floor(alpha t) - C = " + std::to_string(fa) + " - " + std::to_string(c) + " < 1");
            const std::size_t side_a = t - fa + c;
            if (side_a > fa)
                throw FeasibilityError("gadget-degree", "t - floor(alpha t) + C = " + std::to_string(side_a) + " > floor(alpha t) = " + std::to_string(fa));
            Rational ua = rat(2 * fa - c) * rat(side_a) / rat(t);
            if (ua > bt)
                throw FeasibilityError("U_A bound", "(1/" + std::to_string(t) + ")(" + std::to_string(2 * fa - c) + ")(" + std::to_string(side_a) +
                                                        ") = " + to_string(ua) + " > " + to_string(bt));
            if (rat(side_a) > bt)
                throw FeasibilityError("U_B bound", "t - floor(alpha t) + C = " + std::to_string(side_a) + " > " + to_string(bt));
        } else {
            const Rational ratio = beta_prime * rat(t) / alpha;
            if (ratio > alpha * rat(t))
                throw FeasibilityError("single-degree", "beta' t / alpha = " + to_string(ratio) + " > alpha t = " + to_string(alpha * rat(t)));
            single_a = static_cast<std::size_t>(floor_of(ratio).convert_to<long long>());
            if (single_a < 1) throw FeasibilityError("single-size", "floor(beta' t / alpha) = 0");
            if (single_a > t) single_a = t;
            const std::size_t need = (t - single_a) + (t - fa);
            if (fa < need)
                throw FeasibilityError("single-size", "deficient block of size " + std::to_string(fa) + " cannot fill both sides (needs " +
                                                          std::to_string(need) + ")");
            // deficient vertices have degree 1
            Rational ua = (rat(single_a * fa) + rat(t - single_a)) / rat(t);
            const std::size_t ub_size = fa + fa - (t - single_a);
            Rational ub = (rat(fa * single_a) + rat(fa - (t - single_a))) / rat(ub_size);
            if (ua > bt) throw FeasibilityError("single-block-average", "A-side block average " + to_string(ua) + " > " + to_string(bt));
            if (ub > bt) throw FeasibilityError("single-block-average", "B-side block average " + to_string(ub) + " > " + to_string(bt));
        }
    }

    ChainBuilder builder(1, seq.d[0]);
    auto terminals = build_layered(builder, seq);
    if (fa < t) {
        // deficient blocks in list order: newest gadget first, A before B
        auto key = [](ChainBuilder::Handle h) { return std::pair<long long, int>(-static_cast<long long>(h / 2), static_cast<int>(h % 2)); };
        std::set<std::pair<long long, int>> deficient;
        for (auto h : terminals)
            if (builder.block_size(h) < t) deficient.insert(key(h));
        while (!deficient.empty()) {
            auto [neg_g, side] = *deficient.begin();
            deficient.erase(deficient.begin());
            ChainBuilder::Handle u = static_cast<std::size_t>(-neg_g) * 2 + static_cast<std::size_t>(side);
            const std::size_t size = builder.block_size(u);
            std::vector<int> sides(size, 1);
            std::size_t g;
            if (options.strategy == AugmentStrategy::Step) {
                for (std::size_t i = 0; i < fa - c; ++i) sides[i] = 0;
                g = builder.absorb(t - fa + c, fa, u, sides);
            } else {
                for (std::size_t i = 0; i < t - single_a; ++i) sides[i] = 0;
                g = builder.absorb(single_a, fa, u, sides);
            }
            for (ChainBuilder::Handle h : {2 * g, 2 * g + 1})
                if (builder.block_size(h) < t) deficient.insert(key(h));
        }
    }
    auto out = builder.finalize();

    auto stats = block_stats(out.pg);
    require(stats.is_thick(t), "(a): thickness");
    require(rat(stats.delta) <= alpha * rat(t), "(b): maximum degree");
    require(stats.b <= bt, "(c): block average degree");
    return out;
}

} // namespace itlab
