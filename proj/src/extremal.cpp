#include "hyperham/extremal.hpp"

#include <algorithm>
#include <vector>

#include "hyperham/graph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

Construction partition_construction(int n, int forbidden) {
    if (n < 6 || n % 3 != 0) throw std::invalid_argument("n must be divisible by 3 and at least 6");
    const int nx = 2 * n / 3;
    Construction c;
    c.partition.n = n;
    c.partition.forbidden = forbidden;
    c.partition.x = VertexSet(n);
    c.partition.y = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) (v < nx ? c.partition.x : c.partition.y).insert(v);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int d = b + 1; d < n; ++d)
                for (int e = d + 1; e < n; ++e) {
                    int in_x = (a < nx) + (b < nx) + (d < nx) + (e < nx);
                    if (in_x != forbidden) edges.push_back({a, b, d, e});
                }
    c.graph = Hypergraph(4, n, std::move(edges));
    return c;
}

Construction construction_a(int n) { return partition_construction(n, 2); }
Construction construction_b(int n) { return partition_construction(n, 3); }

Hypergraph random_hypergraph(int n, int k, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
    if (k < 2 || k > 8 || n < 0) throw std::invalid_argument("bad n or k");
    Rng rng(seed);
    std::vector<Edge> edges;
    if (n >= k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            if (rng.bernoulli(p)) edges.emplace_back(idx.begin(), idx.end());
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return Hypergraph(k, n, std::move(edges));
}

namespace {

// Mutable 4-uniform edge set with pair degrees, used only by the repair loop.
struct PairDegreeState {
    int n;
    BinomialTable bt;
    std::vector<std::uint64_t> bits;
    std::vector<std::uint64_t> pair_deg;

    explicit PairDegreeState(int n_) : n(n_), bt(std::max(n_, 1), 4), bits((bt(n_, 4) + 63) / 64, 0),
                                       pair_deg(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0) {}

    std::uint64_t rank(const int* q) const { return bt(q[0], 1) + bt(q[1], 2) + bt(q[2], 3) + bt(q[3], 4); }
    bool has(const int* q) const {
        auto r = rank(q);
        return (bits[r >> 6] >> (r & 63)) & 1u;
    }
    void add(const int* q) {
        auto r = rank(q);
        bits[r >> 6] |= std::uint64_t{1} << (r & 63);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) ++pair_deg[pair_index(q[i], q[j])];
    }
};

}  // namespace

RepairedSample random_with_min_pair_degree(int n, std::uint64_t target, double p, std::uint64_t seed,
                                           int max_retries) {
    if (n < 4) throw std::invalid_argument("need n >= 4");
    if (target > binomial(n - 2, 2)) throw std::invalid_argument("target exceeds C(n-2,2)");
    // Repairs per attempt are capped; each repair raises the deficiency sum by
    // at least one, so this cap is never hit when target <= C(n-2,2).
    const std::uint64_t repair_cap = binomial(n, 4);
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        Hypergraph h = random_hypergraph(n, 4, p, Rng::derive(seed, attempt).next_u64());
        if (target == 0) return {std::move(h), 0, attempt};
        PairDegreeState st(n);
        for (const auto& e : h.edges()) st.add(e.data());
        std::size_t repairs = 0;
        std::vector<Edge> added;
        while (true) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < st.pair_deg.size(); ++i)
                if (st.pair_deg[i] < st.pair_deg[worst]) worst = i;
            if (st.pair_deg[worst] >= target) break;
            if (repairs >= repair_cap) break;
            // decode worst pair (colex index) into x < y
            int y = 1;
            while (static_cast<std::size_t>(y + 1) * y / 2 <= worst) ++y;
            int x = static_cast<int>(worst - static_cast<std::size_t>(y) * (y - 1) / 2);
            int best[4] = {-1, -1, -1, -1};
            bool found = false;
            for (int c = 0; c < n; ++c) {
                if (c == x || c == y) continue;
                for (int d = c + 1; d < n; ++d) {
                    if (d == x || d == y) continue;
                    int q[4] = {x, y, c, d};
                    std::sort(q, q + 4);
                    if (st.has(q)) continue;
                    if (!found || std::lexicographical_compare(q, q + 4, best, best + 4)) {
                        std::copy(q, q + 4, best);
                        found = true;
                    }
                }
            }
            if (!found) break;
            st.add(best);
            added.push_back({best[0], best[1], best[2], best[3]});
            ++repairs;
        }
        std::uint64_t mn = *std::min_element(st.pair_deg.begin(), st.pair_deg.end());
        if (mn >= target) {
            std::vector<Edge> edges = h.edges();
            edges.insert(edges.end(), added.begin(), added.end());
            return {Hypergraph(4, n, std::move(edges)), repairs, attempt};
        }
    }
    throw GenerationFailure("retries exhausted before reaching the pair-degree target");
}

}  // namespace hyperham
