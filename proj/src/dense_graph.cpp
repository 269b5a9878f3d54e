#include "itlab/dense_graph.hpp"

#include <algorithm>

namespace itlab {

std::size_t DenseGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
}

std::size_t DenseGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& r : rows_) d = std::max(d, r.count());
    return d;
}

bool DenseGraph::has_isolated_vertex() const {
    return std::any_of(rows_.begin(), rows_.end(), [](const VertexSet& r) { return r.none(); });
}

std::vector<Edge> DenseGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < rows_.size(); ++u)
        for (std::size_t v = rows_[u].next(u); v != VertexSet::npos; v = rows_[u].next(v))
            out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    return out;
}

std::vector<std::vector<Vertex>> DenseGraph::components() const {
    std::vector<std::vector<Vertex>> out;
    VertexSet unseen(order());
    unseen.set_all();
    for (std::size_t start = unseen.first(); start != VertexSet::npos; start = unseen.first()) {
        VertexSet comp(order());
        VertexSet frontier(order());
        frontier.set(start);
        unseen.reset(start);
        while (frontier.any()) {
            comp |= frontier;
            VertexSet next(order());
            frontier.for_each([&](std::size_t v) { next |= rows_[v]; });
            next &= unseen;
            unseen -= next;
            frontier = std::move(next);
        }
        std::vector<Vertex> members;
        comp.for_each([&](std::size_t v) { members.push_back(static_cast<Vertex>(v)); });
        out.push_back(std::move(members));
    }
    return out;
}

bool DenseGraph::complement_disconnected() const {
    const std::size_t n = order();
    if (n <= 1) return false;
    VertexSet unseen(n);
    unseen.set_all();
    unseen.reset(0);
    VertexSet frontier(n);
    frontier.set(0);
    while (frontier.any() && unseen.any()) {
        VertexSet next(n);
        // v reaches, in the complement, every unseen vertex outside N(v)
        frontier.for_each([&](std::size_t v) { next |= unseen - rows_[v]; });
        unseen -= next;
        frontier = std::move(next);
    }
    return unseen.any();
}

DenseGraph DenseGraph::induced(const VertexSet& keep) const {
    std::vector<Vertex> order;
    keep.for_each([&](std::size_t v) { order.push_back(static_cast<Vertex>(v)); });
    return permuted(order);
}

DenseGraph DenseGraph::permuted(const std::vector<Vertex>& order) const {
    DenseGraph out(order.size());
    std::vector<Vertex> index(rows_.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) index[static_cast<std::size_t>(order[i])] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < order.size(); ++i)
        rows_[static_cast<std::size_t>(order[i])].for_each([&](std::size_t w) {
            if (index[w] >= 0) out.rows_[i].set(static_cast<std::size_t>(index[w]));
        });
    return out;
}

Graph DenseGraph::to_graph() const { return Graph::from_edges(static_cast<Vertex>(order()), edges()); }

} // namespace itlab
