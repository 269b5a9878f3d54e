#pragma once

#include <cstddef>
#include <vector>

#include "itlab/graph.hpp"
#include "itlab/vertex_set.hpp"

namespace itlab {

/// Mutable bit-matrix graph used inside the search engines.
class DenseGraph {
public:
    DenseGraph() = default;
    explicit DenseGraph(std::size_t n) : rows_(n, VertexSet(n)) {}
    explicit DenseGraph(const Graph& g) : rows_(g.adjacency_rows()) {}

    std::size_t order() const noexcept { return rows_.size(); }
    const VertexSet& row(std::size_t v) const { return rows_[v]; }
    std::size_t degree(std::size_t v) const { return rows_[v].count(); }
    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }

    void add_edge(std::size_t u, std::size_t v) {
        rows_[u].set(v);
        rows_[v].set(u);
    }
    void remove_edge(std::size_t u, std::size_t v) {
        rows_[u].reset(v);
        rows_[v].reset(u);
    }

    std::size_t edge_count() const;
    std::size_t max_degree() const;
    bool has_isolated_vertex() const;

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// Connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<Vertex>> components() const;

    /// True iff the complement graph has more than one component.
    bool complement_disconnected() const;

    /// Induced subgraph on `keep`, vertices renumbered in increasing order.
    DenseGraph induced(const VertexSet& keep) const;

    /// Relabels so that new vertex i is old vertex order[i].
    DenseGraph permuted(const std::vector<Vertex>& order) const;

    Graph to_graph() const;

    friend bool operator==(const DenseGraph&, const DenseGraph&) = default;

private:
    std::vector<VertexSet> rows_;
};

} // namespace itlab
