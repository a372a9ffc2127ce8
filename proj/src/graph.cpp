#include "hyperham/graph.hpp"

#include <stdexcept>

namespace hyperham {

Graph Graph::from_hypergraph(const Hypergraph& h) {
    if (h.k() != 2) throw std::invalid_argument("graph needs a 2-uniform hypergraph");
    Graph g(h.n());
    for (const auto& e : h.edges()) g.add_edge(e[0], e[1]);
    return g;
}

Graph Graph::induced(const VertexSet& u) const {
    Graph g(universe(), verts_ & u);
    g.verts_.for_each([&](Vertex v) {
        g.adj_[v] = adj_[v] & g.verts_;
        g.m_ += g.adj_[v].size();
    });
    g.m_ /= 2;
    return g;
}

std::size_t Graph::cut(const VertexSet& a, const VertexSet& b) const {
    std::size_t c = 0;
    a.for_each([&](Vertex v) { c += intersection_size(adj_[v], b); });
    return c;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < universe(); ++u)
        for (Vertex v = adj_[u].next(u + 1); v >= 0; v = adj_[u].next(v + 1)) out.emplace_back(u, v);
    return out;
}

Graph link_graph(const Hypergraph& h, const std::vector<Vertex>& anchors) {
    if (static_cast<int>(anchors.size()) != h.k() - 2) throw std::invalid_argument("link_graph: need k-2 anchors");
    Graph g(h.n());
    for (const auto& e : h.edges()) {
        Vertex rest[2];
        int r = 0;
        int hit = 0;
        for (Vertex v : e) {
            bool anchor = false;
            for (Vertex a : anchors)
                if (a == v) anchor = true;
            if (anchor)
                ++hit;
            else if (r < 2)
                rest[r++] = v;
        }
        if (hit == h.k() - 2 && r == 2) g.add_edge(rest[0], rest[1]);
    }
    return g;
}

std::vector<Graph> all_links(const Hypergraph& h) {
    const int n = h.n();
    std::vector<Graph> out;
    if (h.k() == 3) {
        out.assign(n, Graph(n));
        for (const auto& e : h.edges()) {
            out[e[0]].add_edge(e[1], e[2]);
            out[e[1]].add_edge(e[0], e[2]);
            out[e[2]].add_edge(e[0], e[1]);
        }
    } else if (h.k() == 4) {
        out.assign(static_cast<std::size_t>(n) * (n - 1) / 2, Graph(n));
        static constexpr int kPairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                             {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
        for (const auto& e : h.edges())
            for (const auto& p : kPairs) out[pair_index(e[p[0]], e[p[1]])].add_edge(e[p[2]], e[p[3]]);
    } else {
        throw std::invalid_argument("all_links: k must be 3 or 4");
    }
    return out;
}

}  // namespace hyperham
