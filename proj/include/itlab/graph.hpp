#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "itlab/rational.hpp"
#include "itlab/vertex_set.hpp"

namespace itlab {

using Vertex = std::int32_t;
using BlockId = std::int32_t;

/// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..order()-1 with sorted adjacency lists.
/// Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(Vertex n);

    /// Builds from an edge list. Rejects self-loops, out-of-range endpoints and
    /// duplicate edges (in either orientation) with PreconditionError.
    static Graph from_edges(Vertex n, std::span<const Edge> edges);

    Vertex order() const noexcept { return static_cast<Vertex>(adj_.size()); }
    std::size_t size() const noexcept { return m_; }

    std::span<const Vertex> neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }
    std::size_t max_degree() const noexcept { return max_degree_; }
    bool adjacent(Vertex u, Vertex v) const;

    /// All edges, lexicographically sorted.
    std::vector<Edge> edges() const;

    /// One bit row per vertex.
    std::vector<VertexSet> adjacency_rows() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
    std::size_t max_degree_ = 0;
};

/// A graph derived from a parent graph; original[i] is the parent id of vertex i.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> original;
};

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep_sorted, std::vector<Vertex>* kept = nullptr);

/// G ⋇ e: removes both endpoints of e and every neighbour of either.
Subgraph explode(const Graph& g, Edge e);

/// G - e. Vertex ids are unchanged.
Graph delete_edge(const Graph& g, Edge e);

/// Graph plus a partition of its vertices into blocks 0..block_count()-1.
/// Blocks are nonempty; on disk they are numbered from 1.
class PartitionedGraph {
public:
    PartitionedGraph() = default;
    PartitionedGraph(Graph graph, std::vector<BlockId> block_of);

    const Graph& graph() const noexcept { return graph_; }
    BlockId block_count() const noexcept { return static_cast<BlockId>(blocks_.size()); }
    BlockId block_of(Vertex v) const { return block_of_[static_cast<std::size_t>(v)]; }
    std::span<const BlockId> block_assignment() const noexcept { return block_of_; }
    std::span<const Vertex> block(BlockId b) const { return blocks_[static_cast<std::size_t>(b)]; }
    std::size_t block_size(BlockId b) const { return blocks_[static_cast<std::size_t>(b)].size(); }

    friend bool operator==(const PartitionedGraph& a, const PartitionedGraph& b) {
        return a.graph_ == b.graph_ && a.block_of_ == b.block_of_;
    }

private:
    Graph graph_;
    std::vector<BlockId> block_of_;
    std::vector<std::vector<Vertex>> blocks_;
};

/// The subsystem G_S plus maps back to the parent's vertex and block ids.
struct Subsystem {
    PartitionedGraph pg;
    std::vector<Vertex> original_vertex;
    std::vector<BlockId> original_block;
};

/// G_S for a nonempty set S of block ids; blocks are renumbered in increasing
/// order of their parent id.
Subsystem induced_subsystem(const PartitionedGraph& pg, std::span<const BlockId> blocks);

struct BlockStat {
    std::size_t size = 0;
    std::int64_t degree_sum = 0;
    Rational average_degree;
};

struct BlockStats {
    std::vector<BlockStat> blocks;
    std::size_t delta = 0;     ///< Δ(G)
    std::size_t thickness = 0; ///< smallest block size
    Rational b;                ///< maximum average block degree

    bool is_thick(std::size_t t) const noexcept { return thickness >= t; }
};

BlockStats block_stats(const PartitionedGraph& pg);

} // namespace itlab
