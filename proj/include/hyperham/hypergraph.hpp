#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperham/vertex_set.hpp"

namespace hyperham {

/// Error raised by the text parser; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + ", line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using Edge = std::vector<Vertex>;

/// Binomial coefficients up to a fixed row count, saturating at UINT64_MAX.
class BinomialTable {
public:
    explicit BinomialTable(int max_n, int max_k);
    std::uint64_t operator()(int n, int k) const {
        if (k < 0 || n < 0 || k > n) return 0;
        if (k > max_k_) k = n - k;
        return table_[static_cast<std::size_t>(n) * (max_k_ + 1) + k];
    }

private:
    int max_n_;
    int max_k_;
    std::vector<std::uint64_t> table_;
};

std::uint64_t binomial(int n, int k);

/// Immutable k-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored as ascending vertex lists in ascending lexicographic
/// order. Membership is answered through the colex rank of the edge.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Builds from arbitrary-order edges. Each edge is sorted; duplicates,
    /// repeated vertices and out-of-range vertices throw invalid_argument.
    Hypergraph(int k, int n, std::vector<Edge> edges);

    static Hypergraph complete(int k, int n);
    static Hypergraph empty(int k, int n) { return Hypergraph(k, n, {}); }

    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Vertices may be in any order; must be k distinct vertices < n.
    bool has_edge(std::span<const Vertex> vs) const;
    bool has_edge(std::initializer_list<Vertex> vs) const {
        return has_edge(std::span<const Vertex>(vs.begin(), vs.size()));
    }

    /// Colex rank of a sorted j-subset.
    std::uint64_t rank(std::span<const Vertex> sorted) const;

    std::uint64_t num_possible_edges() const { return binom_->operator()(n_, k_); }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::shared_ptr<const BinomialTable> binom_;
    std::vector<std::uint64_t> bitmap_;
    std::unordered_set<std::uint64_t> hashed_;
    bool use_bitmap_ = true;
};

/// d_H(S): number of edges containing S.
std::size_t degree(const Hypergraph& h, const VertexSet& s);

struct MinDegree {
    std::size_t value = 0;
    VertexSet witness;
};

/// delta_j(H) with one minimizing j-set (the lexicographically first one).
MinDegree min_j_degree(const Hypergraph& h, int j);

struct Relabeled {
    Hypergraph graph;
    std::vector<Vertex> to_original;  // new id -> old id
};

/// Link of S: the (k-|S|)-uniform hypergraph {e \ S : S subset of e}.
/// Without drop_anchor the universe stays 0..n-1 (S isolated); with it the
/// vertices of S are removed and the rest relabeled in ascending order.
Relabeled link(const Hypergraph& h, const VertexSet& s, bool drop_anchor);

/// Subhypergraph induced on U, relabeled to 0..|U|-1 in ascending order.
Relabeled induced(const Hypergraph& h, const VertexSet& u);

Hypergraph parse_hypergraph(const std::string& text);
std::string serialize_hypergraph(const Hypergraph& h);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const Hypergraph& h, const std::string& path);

/// For each (k-1)-subset T, the set of vertices v with T + v an edge.
///
/// This is the extension oracle for tight path search: the candidates for
/// the next vertex after a tail T are exactly completions(T).
class CompletionIndex {
public:
    explicit CompletionIndex(const Hypergraph& h);

    /// tail: k-1 distinct vertices in any order.
    const VertexSet& completions(std::span<const Vertex> tail) const;
    const Hypergraph& host() const { return *host_; }

private:
    const Hypergraph* host_;
    std::vector<VertexSet> sets_;
};

}  // namespace hyperham
