#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/vertex_set.hpp"

namespace hyperham {

/// Simple graph with bitset adjacency over a fixed universe 0..n-1.
///
/// `vertices()` is V(G); it may be a proper subset of the universe (links keep
/// the anchor vertices in the universe but not in V(G) once restricted).
class Graph {
public:
    Graph() = default;
    explicit Graph(int universe) : verts_(VertexSet::full(universe)), adj_(universe, VertexSet(universe)) {}
    Graph(int universe, const VertexSet& vertices) : verts_(vertices), adj_(universe, VertexSet(universe)) {}

    /// From a 2-uniform hypergraph.
    static Graph from_hypergraph(const Hypergraph& h);

    int universe() const { return static_cast<int>(adj_.size()); }
    const VertexSet& vertices() const { return verts_; }
    int order() const { return verts_.size(); }

    void add_edge(Vertex u, Vertex v) {
        if (!adj_[u].contains(v)) {
            adj_[u].insert(v);
            adj_[v].insert(u);
            ++m_;
        }
    }
    bool has_edge(Vertex u, Vertex v) const { return adj_[u].contains(v); }
    const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return adj_[v].size(); }
    std::size_t num_edges() const { return m_; }

    /// G[U] over the same universe.
    Graph induced(const VertexSet& u) const;

    /// e_G(A, B) for disjoint A, B.
    std::size_t cut(const VertexSet& a, const VertexSet& b) const;

    std::vector<std::pair<Vertex, Vertex>> edge_list() const;

private:
    VertexSet verts_;
    std::vector<VertexSet> adj_;
    std::size_t m_ = 0;
};

/// Link graph H_{uv} of a pair in a 4-uniform hypergraph, or H_v of a vertex
/// in a 3-uniform one, on the full universe (anchors isolated, still in V).
Graph link_graph(const Hypergraph& h, const std::vector<Vertex>& anchors);

/// Index of the unordered pair {u,v} in colex order.
inline std::size_t pair_index(Vertex u, Vertex v) {
    if (u < v) std::swap(u, v);
    return static_cast<std::size_t>(u) * (u - 1) / 2 + v;
}

/// All (k-2)-set links at once: for k=3 the n vertex links H_v, for k=4 the
/// C(n,2) pair links H_{uv} indexed by pair_index. One pass over the edges.
std::vector<Graph> all_links(const Hypergraph& h);

}  // namespace hyperham
