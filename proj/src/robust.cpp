#include "hyperham/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperham {

namespace {
constexpr double kEps = 1e-9;
}

ScaledReal ScaledReal::from_log(double log_value) {
    ScaledReal r;
    r.log_value = log_value;
    r.value = std::exp(log_value);
    const double log2v = log_value / std::log(2.0);
    const double e = std::floor(log2v);
    r.exponent = static_cast<long>(e);
    r.mantissa = std::exp2(log2v - e);
    return r;
}

ScaledReal ScaledReal::from_value(double value) {
    if (value <= 0.0) {
        ScaledReal r;
        r.log_value = -INFINITY;
        return r;
    }
    int e = 0;
    double m = std::frexp(value, &e);  // m in [0.5,1)
    ScaledReal r;
    r.value = value;
    r.log_value = std::log(value);
    r.mantissa = m * 2.0;
    r.exponent = e - 1;
    return r;
}

RobustConstants robust_constants(double alpha, double mu) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    RobustConstants c;
    c.mu_prime = std::min(mu / 4.0, alpha / 72.0);
    long double x = 8.0L / (static_cast<long double>(c.mu_prime) * c.mu_prime) + 1.0L;
    long double r = std::round(x);
    if (std::fabs(x - r) < 1e-9L * std::max(1.0L, x)) x = r;
    long ell = static_cast<long>(std::floor(x)) + 1;
    if (ell % 2 == 0) ++ell;
    c.ell = ell;
    c.beta = ScaledReal::from_log(-std::log(72.0) + 6.0 * static_cast<double>(ell) * std::log(c.mu_prime / 2.0));
    return c;
}

namespace {

struct PathCounter {
    const Graph& g;
    Vertex y;
    VertexSet on_path;

    std::uint64_t rec(Vertex cur, int remaining) {
        if (remaining == 1) return g.has_edge(cur, y) ? 1 : 0;
        if (remaining == 2) {
            const auto& a = g.neighbors(cur).words();
            const auto& b = g.neighbors(y).words();
            const auto& p = on_path.words();
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i] & ~p[i]);
            return c;
        }
        std::uint64_t total = 0;
        VertexSet next = g.neighbors(cur) - on_path;
        next.erase(y);
        next.for_each([&](Vertex nb) {
            on_path.insert(nb);
            total += rec(nb, remaining - 1);
            on_path.erase(nb);
        });
        return total;
    }
};

}  // namespace

std::uint64_t count_paths_fixed_length(const Graph& g, Vertex x, Vertex y, int ell, int cap) {
    if (ell < 1) throw std::invalid_argument("path length must be at least 1");
    if (ell > cap) throw std::invalid_argument("path length exceeds the configured cap");
    if (x == y) throw std::invalid_argument("endpoints must differ");
    if (!g.vertices().contains(x) || !g.vertices().contains(y)) return 0;
    PathCounter pc{g, y, VertexSet(g.universe())};
    pc.on_path.insert(x);
    return pc.rec(x, ell);
}

RobustCheck is_robust(const Graph& g, double beta, int ell) {
    if (ell < 1) throw std::invalid_argument("path length must be at least 1");
    if (ell > kPathLengthCap) throw std::invalid_argument("path length exceeds the configured cap");
    RobustCheck r;
    const double scale = std::pow(static_cast<double>(g.order()), ell - 1);
    r.threshold = beta * scale;
    auto verts = g.vertices().members();
    const std::size_t m = verts.size();
    // ell = 3: paths x-a-b-y = (A^3)_xy - A_xy (d(x) + d(y) - 1), restricted to V(G)
    std::vector<std::uint32_t> common;
    std::vector<int> deg;
    if (ell == 3 && m >= 2) {
        common.assign(m * m, 0);
        deg.assign(m, 0);
        std::vector<VertexSet> nb(m);
        for (std::size_t i = 0; i < m; ++i) {
            nb[i] = g.neighbors(verts[i]) & g.vertices();
            deg[i] = nb[i].size();
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                common[i * m + j] = common[j * m + i] = static_cast<std::uint32_t>(intersection_size(nb[i], nb[j]));
    }
    std::vector<std::uint32_t> pos(g.universe(), 0);
    for (std::size_t i = 0; i < m; ++i) pos[verts[i]] = static_cast<std::uint32_t>(i);
    auto paths3 = [&](std::size_t i, std::size_t j) {
        std::uint64_t walks = 0;
        const std::uint32_t* row = &common[j * m];
        (g.neighbors(verts[i]) & g.vertices()).for_each([&](Vertex a) { walks += row[pos[a]]; });
        if (g.has_edge(verts[i], verts[j])) walks -= static_cast<std::uint64_t>(deg[i] + deg[j] - 1);
        return walks;
    };
    bool first = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            std::uint64_t c = ell == 3 ? paths3(i, j) : count_paths_fixed_length(g, verts[i], verts[j], ell);
            if (first || c < r.worst_count) {
                r.worst_count = c;
                r.worst_x = verts[i];
                r.worst_y = verts[j];
                first = false;
            }
        }
    if (first) {
        // fewer than two vertices: vacuously robust
        r.robust = true;
        return r;
    }
    r.min_ratio = scale > 0 ? static_cast<double>(r.worst_count) / scale : 0.0;
    r.robust = static_cast<double>(r.worst_count) >= r.threshold;
    return r;
}

double count_walks_length3(const Graph& g) {
    double total = 0.0;
    for (auto [a, b] : g.edge_list()) total += 2.0 * g.degree(a) * g.degree(b);
    return total;
}

BlakleyRoy blakley_roy_gap(const Graph& g) {
    BlakleyRoy r;
    r.walks = count_walks_length3(g);
    const double v = g.order();
    const double twice_e = 2.0 * static_cast<double>(g.num_edges());
    r.bound = v > 0 ? twice_e * twice_e * twice_e / (v * v) : 0.0;
    r.gap = r.walks - r.bound;
    return r;
}

RobustCertificate certify(const Graph& g, const VertexSet& u, const RobustParams& p) {
    RobustCertificate c;
    c.u = u & g.vertices();
    c.base_order = g.order();
    c.alpha = p.alpha;
    c.mu = p.mu;
    c.beta = ScaledReal::from_value(p.beta);
    c.ell = p.ell;
    const double n = c.base_order;
    const double usize = c.u.size();
    Graph r = g.induced(c.u);
    c.cut = g.cut(c.u, g.vertices() - c.u);
    c.edges = r.num_edges();
    c.size_bound = (2.0 / 3.0 + p.alpha / 2.0) * n;
    c.cut_bound = p.mu * n * n;
    c.edge_bound = (5.0 / 9.0 + p.alpha / 2.0) * n * n / 2.0 - (n - usize) * (n - usize) / 2.0;
    c.clause_size = usize >= c.size_bound - kEps;
    c.clause_cut = static_cast<double>(c.cut) <= c.cut_bound + kEps;
    c.clause_edges = static_cast<double>(c.edges) >= c.edge_bound - kEps;
    RobustCheck rc = is_robust(r, p.beta, p.ell);
    c.robust = rc.robust;
    c.min_ratio = rc.min_ratio;
    c.worst_count = rc.worst_count;
    return c;
}

namespace {

std::string first_failed(const RobustCertificate& c) {
    if (!c.clause_size) return "size";
    if (!c.robust) return "robust";
    if (!c.clause_cut) return "cut";
    if (!c.clause_edges) return "edges";
    return "";
}

}  // namespace

ExtractionResult extract_robust_subgraph(const Graph& g, const RobustParams& p) {
    const double n = g.order();
    if (p.mode == ExtractionMode::asymptotic) {
        if (static_cast<double>(g.num_edges()) < (5.0 / 9.0 + p.alpha) * n * n / 2.0 - kEps)
            return {std::nullopt, "edge-density precondition", false};
    }
    ExtractionResult res;
    const int floor_size = static_cast<int>(std::ceil((2.0 / 3.0 + p.alpha / 2.0) * n - kEps));

    VertexSet u = g.vertices();
    g.vertices().for_each([&](Vertex v) {
        if (g.degree(v) == 0) u.erase(v);
    });
    std::string failed = "size";
    while (u.size() >= floor_size) {
        Graph r = g.induced(u);
        RobustCheck rc = is_robust(r, p.beta, p.ell);
        if (rc.robust) {
            RobustCertificate c = certify(g, u, p);
            if (c.all_hold()) {
                res.certificate = c;
                return res;
            }
            failed = first_failed(c);
            break;
        }
        failed = "robust";
        Vertex drop = r.degree(rc.worst_x) <= r.degree(rc.worst_y) ? rc.worst_x : rc.worst_y;
        u.erase(drop);
    }

    if (g.order() <= p.exhaustive_max_order) {
        res.used_exhaustive = true;
        auto verts = g.vertices().members();
        const int m = static_cast<int>(verts.size());
        std::uint64_t tried = 0;
        for (int size = m; size >= floor_size && size >= 0; --size) {
            std::vector<int> idx(size);
            for (int i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                if (++tried > p.budget) {
                    res.failed_clause = failed + " (budget exhausted)";
                    return res;
                }
                VertexSet cand(g.universe());
                for (int i : idx) cand.insert(verts[i]);
                RobustCertificate c = certify(g, cand, p);
                if (c.all_hold()) {
                    res.certificate = c;
                    return res;
                }
                int i = size - 1;
                while (i >= 0 && idx[i] == m - size + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
            }
        }
    }
    res.failed_clause = failed;
    return res;
}

L36Report check_lemma_L36(const Graph& g, const Graph& g2, const VertexSet& u, double alpha) {
    if (g.universe() != g2.universe() || !(g.vertices() == g2.vertices()))
        throw std::invalid_argument("graphs must share the vertex set");
    L36Report rep;
    const double n = g.order();
    const VertexSet uu = u & g.vertices();
    rep.rhs = 0.75 * alpha * n * n;
    const double need = (5.0 / 9.0 + alpha) * n * n / 2.0;
    if (!(alpha > 0))
        rep.unmet = "alpha > 0";
    else if (static_cast<double>(g.num_edges()) < need - kEps)
        rep.unmet = "e(G) lower bound";
    else if (static_cast<double>(g2.num_edges()) < need - kEps)
        rep.unmet = "e(G') lower bound";
    else if (3.0 * uu.size() < 2.0 * n - kEps)
        rep.unmet = "|U| >= 2n/3";
    else if (static_cast<double>(g.cut(uu, g.vertices() - uu)) > alpha * n * n / 4.0 + kEps)
        rep.unmet = "cut bound";
    rep.hypotheses_hold = rep.unmet.empty();

    Graph r = g.induced(uu);
    VertexSet heavy(g.universe());
    uu.for_each([&](Vertex v) {
        if (3.0 * r.degree(v) > n) heavy.insert(v);
    });
    double lhs = 0.0;
    uu.for_each([&](Vertex x) {
        VertexSet common = g.neighbors(x) & g2.neighbors(x);
        lhs += intersection_size(common, uu, heavy);
    });
    rep.lhs = lhs;
    rep.pass = !rep.hypotheses_hold || rep.lhs >= rep.rhs - kEps;
    return rep;
}

}  // namespace hyperham
