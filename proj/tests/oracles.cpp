#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace oracle {

std::uint64_t brute_force_it_count(const PartitionedGraph& pg) {
    const auto r = static_cast<std::size_t>(pg.block_count());
    std::vector<std::size_t> idx(r, 0);
    std::uint64_t count = 0;
    if (r == 0) return 1;
    while (true) {
        bool independent = true;
        for (std::size_t i = 0; i < r && independent; ++i)
            for (std::size_t j = i + 1; j < r && independent; ++j)
                if (pg.graph().adjacent(pg.block(static_cast<int>(i))[idx[i]], pg.block(static_cast<int>(j))[idx[j]]))
                    independent = false;
        count += independent;
        std::size_t pos = 0;
        while (pos < r && ++idx[pos] == pg.block_size(static_cast<int>(pos))) idx[pos++] = 0;
        if (pos == r) break;
    }
    return count;
}

Graph SmallGraph::to_graph() const {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj[static_cast<std::size_t>(u)] >> v & 1) edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

int SmallGraph::edge_count() const {
    int s = 0;
    for (auto row : adj) s += std::popcount(row);
    return s / 2;
}

int SmallGraph::max_degree() const {
    int d = 0;
    for (auto row : adj) d = std::max(d, std::popcount(row));
    return d;
}

bool SmallGraph::complement_connected() const {
    if (n <= 1) return true;
    const std::uint16_t all = static_cast<std::uint16_t>((1u << n) - 1);
    std::uint16_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint16_t next = 0;
        for (int v = 0; v < n; ++v)
            if (frontier >> v & 1) next |= static_cast<std::uint16_t>(~adj[static_cast<std::size_t>(v)] & all & ~(1u << v));
        frontier = static_cast<std::uint16_t>(next & ~seen);
        seen |= next;
    }
    return seen == all;
}

namespace {

std::uint64_t code_for(const SmallGraph& g, const std::vector<int>& order) {
    std::uint64_t code = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            code = code << 1 | (g.adj[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] >> order[static_cast<std::size_t>(j)] & 1);
    return code;
}

} // namespace

std::uint64_t canonical_code(const SmallGraph& g) {
    // invariant: (degree, sorted neighbour degrees)
    std::vector<std::vector<int>> inv(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
        auto& s = inv[static_cast<std::size_t>(v)];
        for (int w = 0; w < g.n; ++w)
            if (g.adj[static_cast<std::size_t>(v)] >> w & 1) s.push_back(std::popcount(g.adj[static_cast<std::size_t>(w)]));
        std::sort(s.begin(), s.end());
        s.insert(s.begin(), std::popcount(g.adj[static_cast<std::size_t>(v)]));
    }
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return inv[static_cast<std::size_t>(a)] < inv[static_cast<std::size_t>(b)]; });
    // cells of equal invariant; try every order within cells
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && inv[static_cast<std::size_t>(order[j])] == inv[static_cast<std::size_t>(order[i])]) ++j;
        cells.emplace_back(i, j);
        std::sort(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
        i = j;
    }
    std::uint64_t best = ~std::uint64_t{0};
    // odometer over per-cell permutations
    while (true) {
        best = std::min(best, code_for(g, order));
        std::size_t c = 0;
        for (; c < cells.size(); ++c) {
            auto [b, e] = cells[c];
            if (std::next_permutation(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e))) break;
        }
        if (c == cells.size()) break;
    }
    return best;
}

std::vector<SmallGraph> graphs_up_to_isomorphism(int n) {
    std::vector<SmallGraph> level{SmallGraph{0, {}}};
    for (int m = 1; m <= n; ++m) {
        std::vector<SmallGraph> next;
        std::unordered_set<std::uint64_t> codes;
        for (const auto& g : level)
            for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
                SmallGraph h{m, g.adj};
                h.adj.push_back(static_cast<std::uint16_t>(mask));
                for (int v = 0; v < m - 1; ++v)
                    if (mask >> v & 1) h.adj[static_cast<std::size_t>(v)] |= static_cast<std::uint16_t>(1u << (m - 1));
                if (codes.insert(canonical_code(h) ^ (std::uint64_t{static_cast<unsigned>(m)} << 58)).second) next.push_back(std::move(h));
            }
        level = std::move(next);
    }
    return level;
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

PartitionedGraph random_instance(std::mt19937_64& rng, int r, int lo, int hi, int max_degree, double p) {
    std::uniform_int_distribution<int> size(lo, hi);
    std::vector<itlab::BlockId> block_of;
    for (int b = 0; b < r; ++b)
        for (int s = size(rng); s > 0; --s) block_of.push_back(b);
    const int n = static_cast<int>(block_of.size());
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) {
        if (!coin(rng)) continue;
        if (degree[static_cast<std::size_t>(u)] >= max_degree || degree[static_cast<std::size_t>(v)] >= max_degree) continue;
        ++degree[static_cast<std::size_t>(u)], ++degree[static_cast<std::size_t>(v)];
        edges.push_back({u, v});
    }
    return PartitionedGraph(Graph::from_edges(n, edges), std::move(block_of));
}

PartitionedGraph implication_instance(std::mt19937_64& rng, Family family) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::uniform_real_distribution<double> density(0.05, 0.6);
    switch (family) {
    case Family::Haxell: {
        int d = uniform(1, 3);
        return random_instance(rng, uniform(1, 6), std::max(1, 2 * d - 1), std::min(2 * d + 1, 6), d, density(rng));
    }
    case Family::AverageDegree: {
        int t = uniform(1, 6);
        return random_instance(rng, uniform(1, 4), t, t + 1, 3, density(rng) / 4);
    }
    case Family::Eta:
        return random_instance(rng, uniform(1, 6), 1, 3, 3, density(rng));
    }
    return {};
}

Graph kdd_union(int d, int k) {
    std::vector<Edge> edges;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) edges.push_back({2 * d * c + i, 2 * d * c + d + j});
    return Graph::from_edges(2 * d * k, edges);
}

Graph cycle(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(Edge::make(i, (i + 1) % n));
    return Graph::from_edges(n, edges);
}

Graph path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(n, edges);
}

itlab::CertifiedInstance random_join_tree(std::mt19937_64& rng, int max_blocks) {
    std::uniform_int_distribution<int> side(1, 3);
    std::vector<itlab::CertifiedInstance> pool;
    const int leaves = std::uniform_int_distribution<int>(1, max_blocks - 1)(rng);
    for (int i = 0; i < leaves; ++i) pool.push_back(itlab::complete_bipartite_gadget(static_cast<std::size_t>(side(rng)), static_cast<std::size_t>(side(rng))));
    // each join of instances with r and s blocks has r + s - 1 blocks
    while (pool.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const auto& left = pool[i];
        const auto& right = pool[j];
        itlab::BlockId absorbed = std::uniform_int_distribution<itlab::BlockId>(0, right.pg.block_count() - 1)(rng);
        std::uniform_int_distribution<itlab::BlockId> target(0, left.pg.block_count() - 1);
        std::vector<std::pair<Vertex, itlab::BlockId>> dist;
        for (Vertex v : right.pg.block(absorbed)) dist.emplace_back(v, target(rng));
        auto joined = itlab::join(left, right, absorbed, dist);
        if (i > j) std::swap(i, j);
        pool.erase(pool.begin() + static_cast<long>(j));
        pool.erase(pool.begin() + static_cast<long>(i));
        pool.push_back(std::move(joined));
    }
    return pool.front();
}

namespace {

itlab::CertificatePtr permute_cert(const itlab::NoItCertificate& c, const std::vector<Vertex>& perm) {
    auto out = std::make_shared<itlab::NoItCertificate>(c);
    for (auto& v : out->a_side) v = perm[static_cast<std::size_t>(v)];
    for (auto& v : out->b_side) v = perm[static_cast<std::size_t>(v)];
    for (auto& [v, b] : out->distribution) v = perm[static_cast<std::size_t>(v)];
    if (c.left) out->left = permute_cert(*c.left, perm);
    if (c.right) out->right = permute_cert(*c.right, perm);
    return out;
}

} // namespace

itlab::CertifiedInstance permuted(const itlab::CertifiedInstance& inst, const std::vector<Vertex>& perm) {
    const auto& g = inst.pg.graph();
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back(Edge::make(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]));
    std::vector<itlab::BlockId> block_of(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) block_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = inst.pg.block_of(v);
    return {PartitionedGraph(Graph::from_edges(g.order(), edges), std::move(block_of)), permute_cert(*inst.cert, perm)};
}

} // namespace oracle
