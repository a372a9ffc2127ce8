#include "hyperham/connector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hyperham {

long LengthMenu::for_residue(int i) const {
    if (i < 1 || i > static_cast<int>(values.size())) throw std::invalid_argument("residue out of range");
    return values[i - 1];
}

LengthMenu residue_lengths(int k, long ell) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("ell must be odd and at least 3");
    LengthMenu m;
    m.k = k;
    m.ell = ell;
    if (k == 4)
        m.values = {32 * ell + 49, 8 * ell + 10, 16 * ell + 23, 24 * ell + 36};
    else if (k == 3)
        m.values = {3 * ell + 1, 6 * ell + 5, 9 * ell + 9};
    else
        throw std::invalid_argument("k must be 3 or 4");
    return m;
}

namespace {

struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;
    bool spend(std::uint64_t n = 1) {
        used += n;
        return used <= limit;
    }
    bool left() const { return used < limit; }
    std::uint64_t remaining() const { return used >= limit ? 0 : limit - used; }
};

using PairPred = std::function<bool(Vertex, Vertex)>;

std::vector<Vertex> shuffled(const VertexSet& s, Rng& rng) {
    auto v = s.members();
    rng.shuffle(v);
    return v;
}

// ------------------------------------------------------------ 3-uniform

// a b v1 p1 p1' v2 p2 p2' ... vT x y, where c d p p' is a walk in R_vi for
// the current pair (c,d) and the last pivot has c d x y as a walk.
struct PivotChain {
    const Setup3& s;
    Pair xy;
    int pivots;
    Rng& rng;
    Budget& budget;
    VertexSet used;
    const VertexSet& avail;
    std::vector<Vertex> order;
    Sequence out;

    bool rec(int i, Vertex c, Vertex d) {
        if (!budget.spend()) return false;
        for (Vertex v : order) {
            if (used.contains(v)) continue;
            const Graph* r = s.robust_graph(v);
            if (!r || !r->has_edge(c, d)) continue;
            if (i == pivots) {
                if (r->has_edge(d, xy[0]) && r->has_edge(xy[0], xy[1])) {
                    out.push_back(v);
                    return true;
                }
                if (!budget.spend()) return false;
                continue;
            }
            used.insert(v);
            out.push_back(v);
            VertexSet ps = r->neighbors(d) & avail;
            ps -= used;
            for (Vertex p : order) {
                if (!ps.contains(p)) continue;
                VertexSet qs = r->neighbors(p) & avail;
                qs -= used;
                qs.erase(p);
                int tried = 0;
                for (Vertex q : order) {
                    if (!qs.contains(q)) continue;
                    used.insert(p);
                    used.insert(q);
                    out.push_back(p);
                    out.push_back(q);
                    if (rec(i + 1, p, q)) return true;
                    out.resize(out.size() - 2);
                    used.erase(p);
                    used.erase(q);
                    if (!budget.left() || ++tried >= 4) break;
                }
                if (!budget.left()) break;
            }
            out.pop_back();
            used.erase(v);
            if (!budget.left()) return false;
        }
        return false;
    }
};

std::optional<Sequence> pivot_chain(const Setup3& s, Pair ab, Pair xy, long inner, const VertexSet& avail, Rng& rng,
                                    Budget& budget) {
    if (inner < 1 || inner % 3 != 1) return std::nullopt;
    PivotChain pc{s, xy, static_cast<int>((inner + 2) / 3), rng, budget, VertexSet(s.universe()), avail, {}, {}};
    pc.order = shuffled(avail & s.vertices(), rng);
    for (Vertex v : {ab[0], ab[1], xy[0], xy[1]}) pc.used.insert(v);
    pc.out = {ab[0], ab[1]};
    if (!pc.rec(1, ab[0], ab[1])) return std::nullopt;
    pc.out.push_back(xy[0]);
    pc.out.push_back(xy[1]);
    return pc.out;
}

// Splits `total` into `parts` values that are each 1 mod 3 (or fails).
std::optional<std::vector<long>> split_mod(long total, int parts, long base, long step) {
    long rest = total - base * parts;
    if (rest < 0 || rest % step != 0) return std::nullopt;
    long units = rest / step;
    std::vector<long> out(parts, base);
    for (int i = 0; i < parts; ++i) out[i] += step * (units / parts + (i < units % parts ? 1 : 0));
    return out;
}

std::optional<Sequence> proof_guided3(const Setup3& s, const PairPred& conn, Pair ab, Pair xy, long inner,
                                      const VertexSet& avail, Rng& rng, Budget& budget, int tries) {
    const int bridges = inner % 3 == 1 ? 0 : (inner % 3 == 2 ? 1 : 2);
    auto parts = split_mod(inner - 3 * bridges, bridges + 1, 1, 3);
    if (!parts) return std::nullopt;
    if (bridges == 0) return pivot_chain(s, ab, xy, inner, avail, rng, budget);
    const auto order = shuffled(avail & s.vertices(), rng);
    for (int attempt = 0; attempt < tries && budget.left(); ++attempt) {
        // intermediate bridges (c,d,e): cde an edge, cd and de connectable
        std::vector<std::array<Vertex, 3>> mids;
        VertexSet taken = avail.complement();
        bool ok = true;
        for (int j = 0; j < bridges && ok; ++j) {
            ok = false;
            const std::size_t start = rng.below(order.size() ? order.size() : 1);
            for (std::size_t oi = 0; oi < order.size() && !ok; ++oi) {
                Vertex c = order[(start + oi) % order.size()];
                if (taken.contains(c)) continue;
                for (Vertex d : order) {
                    if (d == c || taken.contains(d) || !conn(c, d)) continue;
                    VertexSet es = s.completions(c, d) & avail;
                    es -= taken;
                    for (Vertex e : order) {
                        if (!es.contains(e) || e == c || e == d || !conn(d, e)) continue;
                        mids.push_back({c, d, e});
                        taken.insert(c);
                        taken.insert(d);
                        taken.insert(e);
                        ok = true;
                        break;
                    }
                    if (ok || !budget.spend()) break;
                }
            }
        }
        if (!ok) return std::nullopt;
        Sequence out = {ab[0], ab[1]};
        VertexSet free = avail - taken;
        Pair from = ab;
        bool failed = false;
        for (int j = 0; j <= bridges; ++j) {
            Pair to = j < bridges ? Pair{mids[j][0], mids[j][1]} : xy;
            auto seg = pivot_chain(s, from, to, (*parts)[j], free, rng, budget);
            if (!seg) {
                failed = true;
                break;
            }
            for (std::size_t t = 2; t + 2 < seg->size(); ++t) free.erase((*seg)[t]);
            out.insert(out.end(), seg->begin() + 2, seg->end() - 2);
            if (j < bridges) {
                out.insert(out.end(), mids[j].begin(), mids[j].end());
                from = {mids[j][1], mids[j][2]};
            }
        }
        if (!failed) {
            out.push_back(xy[0]);
            out.push_back(xy[1]);
            return out;
        }
    }
    return std::nullopt;
}

std::optional<Sequence> direct3(const Setup3& s, Pair ab, Pair xy, long inner, const VertexSet& avail, Rng& rng,
                                Budget& budget) {
    Sequence seq = {ab[0], ab[1]};
    seq.insert(seq.end(), inner, -1);
    seq.push_back(xy[0]);
    seq.push_back(xy[1]);
    if (inner == 0) {
        if (s.has_edge(ab[0], ab[1], xy[0]) && s.has_edge(ab[1], xy[0], xy[1])) return seq;
        return std::nullopt;
    }
    CompletionFn comp = [&](std::span<const Vertex> t) { return s.completions(t[0], t[1]) & s.vertices(); };
    TemplateFill f = fill_template(3, comp, seq, avail & s.vertices(), rng, budget.remaining());
    budget.spend(f.expansions);
    if (!f.found) return std::nullopt;
    return seq;
}

bool windows_ok3(const Setup3& s, const Sequence& seq) {
    VertexSet seen(s.universe());
    for (Vertex v : seq) {
        if (!s.vertices().contains(v) || seen.contains(v)) return false;
        seen.insert(v);
    }
    for (std::size_t i = 0; i + 2 < seq.size(); ++i)
        if (!s.has_edge(seq[i], seq[i + 1], seq[i + 2])) return false;
    return true;
}

// Proof-guided first, then direct; both inside one budget.
ConnectResult connect3_core(const Setup3& s, const PairPred& conn, Pair ab, Pair xy, long inner,
                            const VertexSet& allowed, Rng& rng, Budget& budget, const ConnectOptions& opt) {
    ConnectResult res;
    res.inner_count = inner;
    VertexSet avail = allowed;
    for (Vertex v : {ab[0], ab[1], xy[0], xy[1]}) avail.erase(v);
    if (inner > 0 && avail.size() < inner) {
        res.strategy = "none";
        res.diagnostics = "fewer allowed vertices than inner count";
        return res;
    }
    const std::uint64_t start = budget.used;
    if (opt.proof_guided && inner >= 1) {
        Budget pg{budget.used + budget.remaining() / 2, budget.used};
        auto p = proof_guided3(s, conn, ab, xy, inner, avail, rng, pg, opt.pivot_tries);
        budget.used = pg.used;
        if (p && windows_ok3(s, *p)) {
            res.path = std::move(p);
            res.strategy = "proof-guided";
        }
    }
    if (!res.path && opt.direct) {
        auto p = direct3(s, ab, xy, inner, avail, rng, budget);
        if (p && windows_ok3(s, *p)) {
            res.path = std::move(p);
            res.strategy = "direct";
        }
    }
    res.expansions = budget.used - start;
    if (!res.path) {
        res.strategy = "none";
        res.diagnostics = "budget exhausted";
    }
    return res;
}

void require_disjoint(std::span<const Vertex> a, std::span<const Vertex> b, int n) {
    VertexSet seen(n);
    for (Vertex v : a) {
        if (v < 0 || v >= n) throw PreconditionError("vertex out of range");
        if (seen.contains(v)) throw PreconditionError("end tuple repeats a vertex");
        seen.insert(v);
    }
    for (Vertex v : b) {
        if (v < 0 || v >= n) throw PreconditionError("vertex out of range");
        if (seen.contains(v)) throw PreconditionError("end tuples are not disjoint");
        seen.insert(v);
    }
}

// ------------------------------------------------------------ 4-uniform

CompletionFn host_completions(const TripleIndex& idx) {
    return [&idx](std::span<const Vertex> t) { return idx.family().completions(t[0], t[1], t[2]); };
}

std::optional<Sequence> direct4(const TripleIndex& idx, Triple abc, Triple xyz, long inner, const VertexSet& avail,
                                Rng& rng, Budget& budget) {
    Sequence seq(abc.begin(), abc.end());
    seq.insert(seq.end(), inner, -1);
    seq.insert(seq.end(), xyz.begin(), xyz.end());
    if (inner == 0) {
        if (is_valid(seq, idx.family().host(), SeqKind::path)) return seq;
        return std::nullopt;
    }
    TemplateFill f = fill_template(4, host_completions(idx), seq, avail, rng, budget.remaining());
    budget.spend(f.expansions);
    if (!f.found) return std::nullopt;
    return seq;
}

// One 8t+10 segment following the six conditions: u in U_abc, w in U_xyz,
// q a walk in R_uw, p and r 3-uniform paths in the links of u and w.
std::optional<Sequence> segment4(const TripleIndex& idx, Triple abc, Triple xyz, long t, const VertexSet& avail,
                                 Rng& rng, Budget& budget, const ConnectOptions& opt) {
    const RobustFamily4& f = idx.family();
    const double z3 = idx.zeta() * idx.zeta() * idx.zeta();
    const auto us = shuffled(idx.witness(abc[0], abc[1], abc[2]) & avail, rng);
    const auto ws = shuffled(idx.witness(xyz[0], xyz[1], xyz[2]) & avail, rng);
    if (us.empty() || ws.empty()) return std::nullopt;
    const auto order = shuffled(avail, rng);
    for (int attempt = 0; attempt < opt.pivot_tries && budget.left(); ++attempt) {
        const Vertex u = us[attempt % us.size()];
        const Vertex w = ws[(attempt / us.size() + attempt) % ws.size()];
        if (u == w) continue;
        const Graph& r = f.robust_graph(u, w);
        VertexSet pool = avail;
        pool.erase(u);
        pool.erase(w);
        // 3-edge walk q1 q2 q3 q4 with distinct vertices
        std::optional<std::array<Vertex, 4>> q;
        int walks = 0;
        for (std::size_t s0 = rng.below(order.size()), i = 0; i < order.size() && !q && walks < 16; ++i) {
            const Vertex q1 = order[(s0 + i) % order.size()];
            if (!pool.contains(q1) || !r.vertices().contains(q1)) continue;
            for (Vertex q2 : order) {
                if (q || !budget.spend()) break;
                if (q2 == q1 || !pool.contains(q2) || !r.has_edge(q1, q2)) continue;
                if (!idx.link_pair_connectable(u, q1, q2, z3)) continue;
                for (Vertex q3 : order) {
                    if (q) break;
                    if (q3 == q1 || q3 == q2 || !pool.contains(q3) || !r.has_edge(q2, q3)) continue;
                    for (Vertex q4 : order) {
                        if (q4 == q1 || q4 == q2 || q4 == q3 || !pool.contains(q4) || !r.has_edge(q3, q4)) continue;
                        ++walks;
                        if (idx.link_pair_connectable(w, q3, q4, z3)) {
                            q = std::array<Vertex, 4>{q1, q2, q3, q4};
                            break;
                        }
                    }
                }
            }
        }
        if (!q) continue;
        for (Vertex v : *q) pool.erase(v);
        const long inner3 = 3 * t + 1;
        LinkView hu(f, u), hw(f, w);
        const double zeta = idx.zeta();
        PairPred cu = [&](Vertex a, Vertex b) { return idx.link_pair_connectable(u, a, b, zeta); };
        PairPred cw = [&](Vertex a, Vertex b) { return idx.link_pair_connectable(w, a, b, zeta); };
        ConnectOptions sub = opt;
        sub.direct = false;
        Budget pb{budget.used + budget.remaining() / 4, budget.used};
        ConnectResult pr = connect3_core(hu, cu, {abc[1], abc[2]}, {(*q)[0], (*q)[1]}, inner3, pool, rng, pb, sub);
        budget.used = pb.used;
        if (!pr.path) continue;
        const Sequence& p = *pr.path;
        VertexSet pool2 = pool;
        for (std::size_t i = 2; i + 2 < p.size(); ++i) pool2.erase(p[i]);
        Budget rb{budget.used + budget.remaining() / 4, budget.used};
        ConnectResult rr = connect3_core(hw, cw, {(*q)[2], (*q)[3]}, {xyz[0], xyz[1]}, inner3, pool2, rng, rb, sub);
        budget.used = rb.used;
        if (!rr.path) continue;
        const Sequence& rs = *rr.path;
        VertexSet pool3 = pool2;
        for (std::size_t i = 2; i + 2 < rs.size(); ++i) pool3.erase(rs[i]);

        // a b c u1 p1 p2 p3 u2 ... p_{3t} u_{t+1} p_{3t+1} q1 q2 u w q3 q4
        // r_{3t+1} w_{t+1} r_{3t} r_{3t-1} r_{3t-2} w_t ... r_1 w_1 x y z
        Sequence seq(abc.begin(), abc.end());
        seq.push_back(-1);
        for (long j = 0; j < t; ++j) {
            for (int i = 1; i <= 3; ++i) seq.push_back(p[2 + 3 * j + i - 1]);
            seq.push_back(-1);
        }
        seq.push_back(p[2 + 3 * t]);
        seq.push_back((*q)[0]);
        seq.push_back((*q)[1]);
        seq.push_back(u);
        seq.push_back(w);
        seq.push_back((*q)[2]);
        seq.push_back((*q)[3]);
        seq.push_back(rs[2]);
        for (long j = 0; j < t; ++j) {
            seq.push_back(-1);
            for (int i = 0; i < 3; ++i) seq.push_back(rs[3 + 3 * j + i]);
        }
        seq.push_back(-1);
        seq.insert(seq.end(), xyz.begin(), xyz.end());
        TemplateFill fill = fill_template(4, host_completions(idx), seq, pool3, rng, budget.remaining() / 2 + 1);
        budget.spend(fill.expansions);
        if (fill.found) return seq;
    }
    return std::nullopt;
}

std::optional<Sequence> proof_guided4(const TripleIndex& idx, Triple abc, Triple xyz, long inner,
                                      const VertexSet& avail, Rng& rng, Budget& budget, const ConnectOptions& opt) {
    // inner = sum of segments 8t_i+10 plus 3 per intermediate triple
    int j = static_cast<int>(((inner % 4) + 3) % 4);
    if (j == 0) j = 4;
    std::optional<std::vector<long>> parts;
    for (int jj : {j, j + 4}) {
        parts = split_mod(inner - 3 * (jj - 1), jj, 10, 8);
        if (parts) {
            j = jj;
            break;
        }
    }
    if (!parts) return std::nullopt;
    const auto order = shuffled(avail, rng);
    for (int attempt = 0; attempt < 4 && budget.left(); ++attempt) {
        std::vector<Triple> mids;
        VertexSet free = avail;
        for (int m = 0; m + 1 < j; ++m) {
            bool ok = false;
            const std::size_t s0 = rng.below(order.size());
            for (std::size_t i = 0; i < order.size() && !ok; ++i) {
                Vertex d = order[(s0 + i) % order.size()];
                if (!free.contains(d)) continue;
                for (Vertex e : order) {
                    if (ok || !budget.spend()) break;
                    if (e == d || !free.contains(e)) continue;
                    for (Vertex g : order) {
                        if (g == d || g == e || !free.contains(g) || !idx.connectable(d, e, g)) continue;
                        mids.push_back({d, e, g});
                        free.erase(d);
                        free.erase(e);
                        free.erase(g);
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) return std::nullopt;
        }
        Sequence out(abc.begin(), abc.end());
        Triple from = abc;
        bool failed = false;
        for (int m = 0; m < j; ++m) {
            Triple to = m + 1 < j ? mids[m] : xyz;
            auto seg = segment4(idx, from, to, ((*parts)[m] - 10) / 8, free, rng, budget, opt);
            if (!seg) {
                failed = true;
                break;
            }
            for (std::size_t i = 3; i + 3 < seg->size(); ++i) free.erase((*seg)[i]);
            out.insert(out.end(), seg->begin() + 3, seg->end() - 3);
            if (m + 1 < j) out.insert(out.end(), to.begin(), to.end());
            from = to;
        }
        if (!failed) {
            out.insert(out.end(), xyz.begin(), xyz.end());
            return out;
        }
    }
    return std::nullopt;
}

bool contained(const Sequence& seq, std::size_t ends, const VertexSet& allowed) {
    for (std::size_t i = ends; i + ends < seq.size(); ++i)
        if (!allowed.contains(seq[i])) return false;
    return true;
}

}  // namespace

ConnectResult connect3(const Setup3& s, const PairIndex& idx, Pair ab, Pair xy, long inner, const VertexSet& allowed,
                       const ConnectOptions& opt) {
    require_disjoint(ab, xy, s.universe());
    if (!idx.connectable(ab[0], ab[1]) || !idx.connectable(xy[0], xy[1]))
        throw PreconditionError("end pairs must be connectable");
    if (inner < 0) throw std::invalid_argument("inner count must be nonnegative");
    Rng rng(opt.seed);
    Budget budget{opt.budget};
    PairPred conn = [&](Vertex a, Vertex b) { return idx.connectable(a, b); };
    ConnectResult res = connect3_core(s, conn, ab, xy, inner, allowed, rng, budget, opt);
    if (res.path && !contained(*res.path, 2, allowed)) throw std::logic_error("connect3 left the allowed set");
    return res;
}

ConnectResult connect4(const TripleIndex& idx, Triple abc, Triple xyz, long inner, const VertexSet& allowed,
                       const ConnectOptions& opt) {
    const int n = idx.n();
    require_disjoint(abc, xyz, n);
    if (!idx.connectable(abc[0], abc[1], abc[2]) || !idx.connectable(xyz[0], xyz[1], xyz[2]))
        throw PreconditionError("end triples must be connectable");
    if (inner < 0) throw std::invalid_argument("inner count must be nonnegative");
    ConnectResult res;
    res.inner_count = inner;
    Rng rng(opt.seed);
    Budget budget{opt.budget};
    VertexSet avail = allowed;
    for (Vertex v : abc) avail.erase(v);
    for (Vertex v : xyz) avail.erase(v);
    if (avail.size() < inner) {
        res.strategy = "none";
        res.diagnostics = "fewer allowed vertices than inner count";
        return res;
    }
    const Hypergraph& h = idx.family().host();
    if (opt.proof_guided && inner >= 10) {
        Budget pg{budget.remaining() / 2};
        auto p = proof_guided4(idx, abc, xyz, inner, avail, rng, pg, opt);
        budget.spend(pg.used);
        if (p && is_valid(*p, h, SeqKind::path)) {
            res.path = std::move(p);
            res.strategy = "proof-guided";
        }
    }
    if (!res.path && opt.direct) {
        auto p = direct4(idx, abc, xyz, inner, avail, rng, budget);
        if (p && is_valid(*p, h, SeqKind::path)) {
            res.path = std::move(p);
            res.strategy = "direct";
        }
    }
    res.expansions = budget.used;
    if (!res.path) {
        res.strategy = "none";
        res.diagnostics = "budget exhausted";
    } else {
        if (static_cast<long>(res.path->size()) != inner + 6 || !contained(*res.path, 3, allowed))
            throw std::logic_error("connect4 produced a path violating its contract");
    }
    return res;
}

ConnectResult connect4_residue(const TripleIndex& idx, Triple abc, Triple xyz, int residue, long ell,
                               const VertexSet& allowed, const ConnectOptions& opt) {
    const LengthMenu m = residue_lengths(4, ell);
    ConnectResult r = connect4(idx, abc, xyz, m.for_residue(residue), allowed, opt);
    r.residue = residue;
    return r;
}

std::variant<ReservoirState, ReservoirFailure> sample_reservoir(const TripleIndex& idx, const ReservoirParams& p) {
    if (!(p.theta_star > 0.0 && p.theta_star < 1.0)) throw std::invalid_argument("theta* must lie in (0,1)");
    if (!(p.theta_star2 > 0.0 && p.theta_star2 < 1.0)) throw std::invalid_argument("theta** must lie in (0,1)");
    const int n = idx.n();
    const double t2 = p.theta_star * p.theta_star;
    const double prob = 0.75 * t2;
    ReservoirFailure fail;
    for (int attempt = 0; attempt <= 10; ++attempt) {
        Rng rng = Rng::derive(p.seed, static_cast<std::uint64_t>(attempt));
        VertexSet r(n);
        for (Vertex v = 0; v < n; ++v)
            if (rng.bernoulli(prob)) r.insert(v);
        fail.attempts = attempt + 1;
        fail.last_size = r.size();
        if (r.size() < t2 * n / 2.0 - 1e-9 || r.size() > t2 * n + 1e-9) continue;
        ReservoirState st;
        st.reservoir = r;
        st.used = VertexSet(n);
        st.theta_star = p.theta_star;
        st.theta_star2 = p.theta_star2;
        st.ell = p.ell;
        st.seed = p.seed;
        st.resamples = attempt;
        st.formula_budget =
            static_cast<std::size_t>(std::floor(t2 * p.theta_star2 / (400.0 * static_cast<double>(p.ell)) * n));
        st.budget = p.budget_override ? *p.budget_override : st.formula_budget;
        // empirical check of the connection clause on random connectable pairs
        Rng vr = Rng::derive(p.seed, 1000);
        const auto outside = (r.complement()).members();
        for (int s = 0; s < p.validation_samples && outside.size() >= 6; ++s) {
            Triple a{}, b{};
            bool found = false;
            for (int tries = 0; tries < 200 && !found; ++tries) {
                std::vector<Vertex> pick;
                VertexSet seen(n);
                while (pick.size() < 6) {
                    Vertex v = outside[vr.below(outside.size())];
                    if (!seen.contains(v)) {
                        seen.insert(v);
                        pick.push_back(v);
                    }
                }
                a = {pick[0], pick[1], pick[2]};
                b = {pick[3], pick[4], pick[5]};
                found = idx.connectable(a[0], a[1], a[2]) && idx.connectable(b[0], b[1], b[2]);
            }
            if (!found) continue;
            for (int res = 1; res <= 4; ++res) {
                ConnectOptions o = p.connect;
                o.seed = vr.next_u64();
                ConnectResult cr = connect4(idx, a, b, p.validation_inner[res - 1], r, o);
                ++st.validation.attempts[res - 1];
                if (cr.path) ++st.validation.successes[res - 1];
            }
        }
        return st;
    }
    fail.reason = "size clause violated after 10 resamples";
    return fail;
}

ConnectResult reserve_connect(ReservoirState& state, const TripleIndex& idx, Triple abc, Triple xyz, long inner,
                              const ConnectOptions& opt) {
    if (state.used.size() + static_cast<std::size_t>(std::max(0L, inner)) > state.budget)
        throw BudgetExceeded("reservoir budget exceeded: used " + std::to_string(state.used.size()) + " + " +
                             std::to_string(inner) + " > " + std::to_string(state.budget));
    ConnectResult r = connect4(idx, abc, xyz, inner, state.available(), opt);
    if (r.path)
        for (std::size_t i = 3; i + 3 < r.path->size(); ++i) state.used.insert((*r.path)[i]);
    return r;
}

}  // namespace hyperham
