#include "hyperham/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperham/parallel.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

namespace {

constexpr std::uint64_t kChunk = 1024;

double tol(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

// chunked trials, per-chunk derived seeds, summed hits
template <class Trial>
McEstimate run_chunks(std::uint64_t trials, std::uint64_t seed, Trial&& trial) {
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = Rng::derive(seed, c);
        const std::uint64_t lo = c * kChunk, hi = std::min(trials, lo + kChunk);
        std::uint64_t h = 0;
        for (std::uint64_t i = lo; i < hi; ++i) h += trial(rng) ? 1 : 0;
        hits[c] = h;
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return wilson_interval(total, trials);
}

}  // namespace

WeightSystem::WeightSystem(int n, double p) : n_(n), p_(p) {
    if (n < 1) throw std::invalid_argument("ground set must be nonempty");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
}

void WeightSystem::add(std::vector<Vertex> a, double w) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw std::invalid_argument("repeated element in set");
    for (Vertex v : a)
        if (v < 0 || v >= n_) throw std::invalid_argument("set element out of range");
    w_[a] += w;
}

WeightSystem random_weight_system(int n, double p, int support, int max_set, std::uint64_t seed) {
    WeightSystem ws(n, p);
    Rng rng(seed);
    max_set = std::clamp(max_set, 1, n);
    for (int i = 0; i < support; ++i) {
        const int size = rng.uniform_int(1, max_set);
        std::vector<Vertex> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        rng.shuffle(all);
        all.resize(size);
        ws.add(all, rng.uniform());
    }
    return ws;
}

JansonBound janson_bound(const WeightSystem& ws, double t) {
    JansonBound r;
    const double p = ws.p();
    std::vector<std::pair<const std::vector<Vertex>*, double>> sup;
    for (const auto& [a, w] : ws.weights()) {
        r.ex += w * std::pow(p, static_cast<double>(a.size()));
        if (w > 0.0) sup.push_back({&a, w});
    }
    if (t < 0.0 || t > r.ex + tol(r.ex))
        throw std::invalid_argument("t must lie in [0, EX]");
    std::vector<VertexSet> sets;
    sets.reserve(sup.size());
    for (const auto& s : sup) sets.push_back(VertexSet::from_vector(ws.ground_size(), *s.first));
    for (std::size_t i = 0; i < sup.size(); ++i)
        for (std::size_t j = 0; j < sup.size(); ++j) {
            if (!sets[i].intersects(sets[j])) continue;
            const int u = static_cast<int>(sup[i].first->size() + sup[j].first->size()) -
                          intersection_size(sets[i], sets[j]);
            r.delta += sup[i].second * sup[j].second * std::pow(p, u);
        }
    if (t == 0.0)
        r.bound = 1.0;
    else if (r.delta == 0.0) {
        r.bound = 0.0;
        r.degenerate = true;
    } else
        r.bound = std::exp(-t * t / (2.0 * r.delta));
    return r;
}

std::vector<std::pair<double, double>> exact_distribution(const WeightSystem& ws) {
    const int n = ws.ground_size();
    if (n > 20) throw std::invalid_argument("exact enumeration needs |V| <= 20");
    std::vector<std::pair<std::uint32_t, double>> sup;
    for (const auto& [a, w] : ws.weights()) {
        std::uint32_t mask = 0;
        for (Vertex v : a) mask |= 1u << v;
        sup.push_back({mask, w});
    }
    const double p = ws.p();
    std::vector<double> pw(n + 1), qw(n + 1);
    for (int i = 0; i <= n; ++i) {
        pw[i] = std::pow(p, i);
        qw[i] = std::pow(1.0 - p, i);
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int c = std::popcount(s);
        const double pr = pw[c] * qw[n - c];
        if (pr == 0.0) continue;
        double x = 0.0;
        for (const auto& [m, w] : sup)
            if ((m & s) == m) x += w;
        out.push_back({x, pr});
    }
    std::sort(out.begin(), out.end());
    return out;
}

double janson_exact_tail(const WeightSystem& ws, double t) {
    const auto dist = exact_distribution(ws);
    double ex = 0.0;
    for (const auto& [x, pr] : dist) ex += x * pr;
    const double cut = ex - t + tol(ex);
    double tail = 0.0;
    for (const auto& [x, pr] : dist)
        if (x <= cut) tail += pr;
    return std::min(1.0, tail);
}

McEstimate wilson_interval(std::uint64_t hits, std::uint64_t trials) {
    McEstimate e;
    e.trials = trials;
    e.hits = hits;
    if (trials == 0) {
        e.hi = 1.0;
        return e;
    }
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(trials);
    const double ph = static_cast<double>(hits) / nn;
    const double den = 1.0 + z * z / nn;
    const double centre = (ph + z * z / (2.0 * nn)) / den;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn)) / den;
    e.estimate = ph;
    e.lo = std::max(0.0, centre - half);
    e.hi = std::min(1.0, centre + half);
    return e;
}

McEstimate janson_mc_tail(const WeightSystem& ws, double t, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    const int n = ws.ground_size();
    const double p = ws.p();
    std::vector<std::pair<std::vector<Vertex>, double>> sup(ws.weights().begin(), ws.weights().end());
    double ex = 0.0;
    for (const auto& [a, w] : sup) ex += w * std::pow(p, static_cast<double>(a.size()));
    const double cut = ex - t + tol(ex);
    return run_chunks(trials, seed, [&](Rng& rng) {
        std::vector<char> in(n);
        for (int v = 0; v < n; ++v) in[v] = rng.bernoulli(p);
        double x = 0.0;
        for (const auto& [a, w] : sup) {
            bool all = true;
            for (Vertex v : a)
                if (!in[v]) {
                    all = false;
                    break;
                }
            if (all) x += w;
        }
        return x <= cut;
    });
}

TailBound bounded_tail_bound(int ground, int m, int k, double xi) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (m < k) throw std::invalid_argument("m must be at least k");
    if (ground < m) throw std::invalid_argument("|V| must be at least m");
    if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in (0,1)");
    TailBound b;
    b.bound = 3.0 * std::exp(-xi * xi * m / (12.0 * k * k));
    b.vacuous = b.bound >= 1.0;
    return b;
}

KSetWeights random_kset_weights(int n, int k, std::uint64_t seed) {
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    KSetWeights w;
    w.n = n;
    w.k = k;
    w.w.resize(binomial(n, k));
    Rng rng(seed);
    for (auto& x : w.w) x = rng.uniform();
    return w;
}

BoundedTailCheck bounded_tail_check(const KSetWeights& w, int m, double xi, std::uint64_t trials, std::uint64_t seed) {
    BoundedTailCheck r;
    r.bound = bounded_tail_bound(w.n, m, w.k, xi);
    for (double x : w.w)
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("weights must lie in [0,1]");
    const double p = static_cast<double>(m) / w.n;
    double total = 0.0;
    for (double x : w.w) total += x;
    r.ex = std::pow(p, w.k) * total;
    r.threshold = xi * std::pow(static_cast<double>(m), w.k);
    const int n = w.n, k = w.k;
    std::vector<std::vector<std::uint64_t>> binom(n + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (int i = 0; i <= n; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= std::min(i, k); ++j) binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    r.empirical = run_chunks(trials, seed, [&](Rng& rng) {
        std::vector<Vertex> s;
        for (Vertex v = 0; v < n; ++v)
            if (rng.bernoulli(p)) s.push_back(v);
        double x = 0.0;
        if (static_cast<int>(s.size()) >= k) {
            std::vector<int> pos(k);
            for (int i = 0; i < k; ++i) pos[i] = i;
            const int sz = static_cast<int>(s.size());
            while (true) {
                std::uint64_t rank = 0;
                for (int i = 0; i < k; ++i) rank += binom[s[pos[i]]][i + 1];
                x += w.w[rank];
                int i = k - 1;
                while (i >= 0 && pos[i] == sz - k + i) --i;
                if (i < 0) break;
                ++pos[i];
                for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
            }
        }
        return std::abs(x - r.ex) >= r.threshold;
    });
    r.pass = r.bound.vacuous || r.empirical.estimate <= r.bound.bound;
    return r;
}

TailBound block_sampling_bound(int nu, int m, int k, double xi) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (m < k) throw std::invalid_argument("m must be at least k");
    if (nu < m) throw std::invalid_argument("nu must be at least m");
    if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in (0,1)");
    TailBound b;
    b.bound = 12.0 * std::sqrt(static_cast<double>(m)) *
              std::exp(-xi * xi * m / (48.0 * std::pow(static_cast<double>(k), 2 * k + 2)));
    b.vacuous = b.bound >= 1.0;
    return b;
}

namespace {

struct LayoutInfo {
    int n = 0;
    int block_size = 0;
    double eta = 0.0;
};

LayoutInfo check_layout(const BlockLayout& layout) {
    if (layout.blocks.empty()) throw std::invalid_argument("no blocks");
    LayoutInfo li;
    li.n = layout.z.universe();
    li.block_size = layout.blocks.front().size();
    VertexSet seen = layout.z;
    for (const auto& b : layout.blocks) {
        if (b.size() != li.block_size) throw std::invalid_argument("blocks must have equal sizes");
        if (b.intersects(seen)) throw std::invalid_argument("blocks and Z must be pairwise disjoint");
        seen |= b;
    }
    if (seen.size() != li.n) throw std::invalid_argument("blocks and Z must cover V");
    li.eta = static_cast<double>(std::max(li.block_size, layout.z.size())) / li.n;
    return li;
}

void range_check(BlockSamplingCheck& r, int k, int m, double xi, bool allow) {
    const double a = 8.0 * k * k * r.eta, b = 16.0 * k * k / static_cast<double>(m);
    r.xi_lower = std::max(a, b);
    std::string why;
    if (r.eta >= 1.0 / (2.0 * k))
        why = "eta = " + std::to_string(r.eta) + " must be below 1/(2k)";
    else if (xi <= a)
        why = "xi must exceed 8k^2 eta = " + std::to_string(a);
    else if (xi <= b)
        why = "xi must exceed 16k^2/m = " + std::to_string(b);
    else if (xi >= 1.0)
        why = "xi must be below 1";
    r.in_range = why.empty();
    r.range_violation = why;
    if (!r.in_range && !allow) throw std::invalid_argument(why);
}

VertexSet sample_society(const BlockLayout& layout, int m, Rng& rng) {
    std::vector<int> idx(layout.blocks.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    for (int i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    VertexSet s(layout.z.universe());
    for (int i = 0; i < m; ++i) s |= layout.blocks[idx[i]];
    return s;
}

}  // namespace

BlockSamplingCheck block_sampling_check(const std::vector<std::vector<Vertex>>& q, int k, const BlockLayout& layout,
                                        int m, double xi, std::uint64_t trials, std::uint64_t seed,
                                        bool allow_out_of_range) {
    const LayoutInfo li = check_layout(layout);
    const int nu = static_cast<int>(layout.blocks.size());
    BlockSamplingCheck r;
    r.bound = block_sampling_bound(nu, m, k, xi);
    r.eta = li.eta;
    range_check(r, k, m, xi, allow_out_of_range);
    for (const auto& t : q) {
        if (static_cast<int>(t.size()) != k) throw std::invalid_argument("tuples must have length k");
        for (Vertex v : t)
            if (v < 0 || v >= li.n) throw std::invalid_argument("tuple entry out of range");
    }
    r.d = static_cast<double>(q.size()) / std::pow(static_cast<double>(li.n), k);
    const double mm = std::pow(static_cast<double>(li.block_size) * m, k);
    r.expected = r.d * mm;
    r.threshold = xi * mm;
    r.empirical = run_chunks(trials, seed, [&](Rng& rng) {
        const VertexSet s = sample_society(layout, m, rng);
        std::uint64_t c = 0;
        for (const auto& t : q) {
            bool all = true;
            for (Vertex v : t)
                if (!s.contains(v)) {
                    all = false;
                    break;
                }
            c += all;
        }
        return std::abs(static_cast<double>(c) - r.expected) >= r.threshold;
    });
    r.pass = r.bound.vacuous || r.empirical.estimate <= r.bound.bound;
    return r;
}

BlockSamplingCheck block_sampling_check(const Hypergraph& g, const BlockLayout& layout, int m, double xi,
                                        std::uint64_t trials, std::uint64_t seed, bool allow_out_of_range) {
    const LayoutInfo li = check_layout(layout);
    if (g.n() != li.n) throw std::invalid_argument("hypergraph and layout disagree on |V|");
    const int k = g.k();
    const int nu = static_cast<int>(layout.blocks.size());
    BlockSamplingCheck r;
    r.bound = block_sampling_bound(nu, m, k, xi);
    r.eta = li.eta;
    range_check(r, k, m, xi, allow_out_of_range);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    r.d = kfact * static_cast<double>(g.num_edges()) / std::pow(static_cast<double>(li.n), k);
    const double mm = std::pow(static_cast<double>(li.block_size) * m, k);
    r.expected = r.d * mm / kfact;
    r.threshold = xi * mm / kfact;
    r.empirical = run_chunks(trials, seed, [&](Rng& rng) {
        const VertexSet s = sample_society(layout, m, rng);
        std::uint64_t c = 0;
        for (const auto& e : g.edges()) {
            bool all = true;
            for (Vertex v : e)
                if (!s.contains(v)) {
                    all = false;
                    break;
                }
            c += all;
        }
        return std::abs(static_cast<double>(c) - r.expected) >= r.threshold;
    });
    r.pass = r.bound.vacuous || r.empirical.estimate <= r.bound.bound;
    return r;
}

}  // namespace hyperham
