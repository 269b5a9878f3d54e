#include "itlab/graph.hpp"

#include <algorithm>
#include <string>

#include "itlab/error.hpp"

namespace itlab {

Graph::Graph(Vertex n) {
    if (n < 0) throw PreconditionError("negative vertex count");
    adj_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
    Graph g(n);
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw PreconditionError("edge endpoint out of range: " + std::to_string(e.u) + "-" + std::to_string(e.v));
        if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
        g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (std::size_t v = 0; v < g.adj_.size(); ++v) {
        auto& row = g.adj_[v];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw PreconditionError("duplicate edge at vertex " + std::to_string(v));
        g.max_degree_ = std::max(g.max_degree_, row.size());
    }
    g.m_ = edges.size();
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& row = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u)
        for (Vertex v : neighbours(u))
            if (u < v) out.push_back({u, v});
    return out;
}

std::vector<VertexSet> Graph::adjacency_rows() const {
    std::vector<VertexSet> rows(adj_.size(), VertexSet(adj_.size()));
    for (std::size_t u = 0; u < adj_.size(); ++u)
        for (Vertex v : adj_[u]) rows[u].set(static_cast<std::size_t>(v));
    return rows;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep_sorted, std::vector<Vertex>* kept) {
    std::vector<Vertex> index(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < keep_sorted.size(); ++i) index[static_cast<std::size_t>(keep_sorted[i])] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keep_sorted.size(); ++i)
        for (Vertex w : g.neighbours(keep_sorted[i])) {
            Vertex j = index[static_cast<std::size_t>(w)];
            if (j > static_cast<Vertex>(i)) edges.push_back({static_cast<Vertex>(i), j});
        }
    if (kept) kept->assign(keep_sorted.begin(), keep_sorted.end());
    return Graph::from_edges(static_cast<Vertex>(keep_sorted.size()), edges);
}

Subgraph explode(const Graph& g, Edge e) {
    if (e.u < 0 || e.v >= g.order() || e.u == e.v || !g.adjacent(e.u, e.v))
        throw PreconditionError("explode: not an edge");
    std::vector<bool> killed(static_cast<std::size_t>(g.order()), false);
    for (Vertex x : {e.u, e.v})
        for (Vertex w : g.neighbours(x)) killed[static_cast<std::size_t>(w)] = true;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!killed[static_cast<std::size_t>(v)]) keep.push_back(v);
    Subgraph out;
    out.graph = induced_subgraph(g, keep, &out.original);
    return out;
}

Graph delete_edge(const Graph& g, Edge e) {
    if (e.u < 0 || e.v >= g.order() || e.u == e.v || !g.adjacent(e.u, e.v))
        throw PreconditionError("delete: not an edge");
    auto edges = g.edges();
    edges.erase(std::find(edges.begin(), edges.end(), Edge::make(e.u, e.v)));
    return Graph::from_edges(g.order(), edges);
}

PartitionedGraph::PartitionedGraph(Graph graph, std::vector<BlockId> block_of)
    : graph_(std::move(graph)), block_of_(std::move(block_of)) {
    if (block_of_.size() != static_cast<std::size_t>(graph_.order()))
        throw PreconditionError("block assignment size differs from vertex count");
    BlockId r = 0;
    for (BlockId b : block_of_) {
        if (b < 0) throw PreconditionError("negative block id");
        r = std::max(r, b + 1);
    }
    blocks_.resize(static_cast<std::size_t>(r));
    for (Vertex v = 0; v < graph_.order(); ++v) blocks_[static_cast<std::size_t>(block_of_[static_cast<std::size_t>(v)])].push_back(v);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        if (blocks_[b].empty()) throw PreconditionError("block " + std::to_string(b + 1) + " is empty");
}

Subsystem induced_subsystem(const PartitionedGraph& pg, std::span<const BlockId> blocks) {
    if (blocks.empty()) throw PreconditionError("induced_subsystem: empty block set");
    std::vector<BlockId> sorted(blocks.begin(), blocks.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("induced_subsystem: repeated block id");
    std::vector<BlockId> new_id(static_cast<std::size_t>(pg.block_count()), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= pg.block_count()) throw PreconditionError("induced_subsystem: bad block id");
        new_id[static_cast<std::size_t>(sorted[i])] = static_cast<BlockId>(i);
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < pg.graph().order(); ++v)
        if (new_id[static_cast<std::size_t>(pg.block_of(v))] >= 0) keep.push_back(v);
    Subsystem out;
    Graph g = induced_subgraph(pg.graph(), keep, &out.original_vertex);
    std::vector<BlockId> assignment;
    assignment.reserve(keep.size());
    for (Vertex v : keep) assignment.push_back(new_id[static_cast<std::size_t>(pg.block_of(v))]);
    out.pg = PartitionedGraph(std::move(g), std::move(assignment));
    out.original_block = std::move(sorted);
    return out;
}

BlockStats block_stats(const PartitionedGraph& pg) {
    BlockStats s;
    s.delta = pg.graph().max_degree();
    s.blocks.resize(static_cast<std::size_t>(pg.block_count()));
    for (BlockId b = 0; b < pg.block_count(); ++b) {
        auto& st = s.blocks[static_cast<std::size_t>(b)];
        st.size = pg.block_size(b);
        for (Vertex v : pg.block(b)) st.degree_sum += static_cast<std::int64_t>(pg.graph().degree(v));
        st.average_degree = Rational(st.degree_sum) / Rational(static_cast<std::int64_t>(st.size));
        if (b == 0 || st.size < s.thickness) s.thickness = st.size;
        if (b == 0 || st.average_degree > s.b) s.b = st.average_degree;
    }
    return s;
}

} // namespace itlab
