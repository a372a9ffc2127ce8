#include "hyperham/connectivity.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperham/parallel.hpp"

namespace hyperham {

namespace {
constexpr double kEps = 1e-9;

std::string pair_name(Vertex u, Vertex v) {
    return "pair {" + std::to_string(std::min(u, v)) + "," + std::to_string(std::max(u, v)) + "}";
}
}  // namespace

std::variant<RobustFamily3, FamilyFailure> build_family3(const Hypergraph& h3, const RobustParams& p) {
    if (h3.k() != 3) throw std::invalid_argument("build_family3 needs a 3-uniform hypergraph");
    RobustFamily3 f;
    f.host_ = &h3;
    f.params_ = p;
    f.verts_ = VertexSet::full(h3.n());
    f.links_ = all_links(h3);
    const int n = h3.n();
    std::vector<ExtractionResult> res(n);
    parallel_for(n, [&](std::size_t v) { res[v] = extract_robust_subgraph(f.links_[v], p); });
    for (int v = 0; v < n; ++v) {
        if (!res[v].certificate) return FamilyFailure{"vertex " + std::to_string(v), res[v].failed_clause};
        f.certs_.push_back(*res[v].certificate);
        f.robust_.push_back(f.links_[v].induced(res[v].certificate->u));
    }
    f.index_ = std::make_shared<CompletionIndex>(h3);
    return f;
}

std::variant<RobustFamily4, FamilyFailure> build_family4(const Hypergraph& h4, const RobustParams& p) {
    if (h4.k() != 4) throw std::invalid_argument("build_family4 needs a 4-uniform hypergraph");
    RobustFamily4 f;
    f.host_ = &h4;
    f.params_ = p;
    f.links_ = all_links(h4);
    const int n = h4.n();
    const std::size_t pairs = f.links_.size();
    std::vector<ExtractionResult> res(pairs);
    parallel_for(pairs, [&](std::size_t i) { res[i] = extract_robust_subgraph(f.links_[i], p); });
    // report the lexicographically first failing pair
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            const auto& r = res[pair_index(u, v)];
            if (!r.certificate) return FamilyFailure{pair_name(u, v), r.failed_clause};
        }
    f.certs_.resize(pairs);
    f.robust_.resize(pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
        f.certs_[i] = *res[i].certificate;
        f.robust_[i] = f.links_[i].induced(f.certs_[i].u);
    }
    f.index_ = std::make_shared<CompletionIndex>(h4);
    return f;
}

LinkView::LinkView(const RobustFamily4& f, Vertex v) : f_(&f), v_(v), verts_(VertexSet::full(f.n())) {
    if (v < 0 || v >= f.n()) throw std::invalid_argument("anchor out of range");
    verts_.erase(v);
}

bool LinkView::has_edge(Vertex a, Vertex b, Vertex c) const {
    if (a == v_ || b == v_ || c == v_) return false;
    return f_->host().has_edge({a, b, c, v_});
}

VertexSet LinkView::completions(Vertex a, Vertex b) const {
    if (a == v_ || b == v_ || a == b) return VertexSet(f_->n());
    return f_->completions(a, b, v_);
}

PairIndex::PairIndex(const Setup3& s, double zeta) : n_(s.universe()), zeta_(zeta) {
    if (!(zeta > 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in (0,1]");
    threshold_ = zeta * s.vertices().size();
    witness_.assign(static_cast<std::size_t>(n_) * n_, VertexSet(n_));
    connectable_.assign(static_cast<std::size_t>(n_) * n_, 0);
    s.vertices().for_each([&](Vertex v) {
        const Graph* r = s.robust_graph(v);
        if (!r) return;
        for (auto [x, y] : r->edge_list()) {
            witness_[x * n_ + y].insert(v);
            witness_[y * n_ + x].insert(v);
        }
    });
    for (Vertex x = 0; x < n_; ++x)
        for (Vertex y = 0; y < n_; ++y)
            if (x != y) connectable_[x * n_ + y] = witness_[x * n_ + y].size() >= threshold_ - kEps;
}

bool is_bridge3(const Setup3& s, const PairIndex& idx, Vertex x, Vertex y, Vertex z) {
    if (x == y || y == z || x == z) return false;
    return idx.connectable(x, y) && idx.connectable(y, z) && s.has_edge(x, y, z);
}

std::vector<Triple> bridges3(const Setup3& s, const PairIndex& idx) {
    std::vector<Triple> out;
    const auto verts = s.vertices().members();
    for (Vertex x : verts)
        for (Vertex y : verts) {
            if (x == y || !idx.connectable(x, y)) continue;
            VertexSet zs = s.completions(x, y) & s.vertices();
            zs.for_each([&](Vertex z) {
                if (idx.connectable(y, z)) out.push_back({x, y, z});
            });
        }
    return out;
}

TripleIndex::TripleIndex(const RobustFamily4& f, double zeta) : f_(&f), n_(f.n()), zeta_(zeta) {
    if (!(zeta > 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in (0,1]");
    const std::size_t n = n_;
    counts_.assign(n * n * n, 0);
    auto at = [&](Vertex v, Vertex x, Vertex y) -> std::uint16_t& { return counts_[(v * n + x) * n + y]; };
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v) {
            const Graph& r = f.robust_graph(u, v);
            for (auto [x, y] : r.edge_list()) {
                ++at(v, x, y);
                ++at(v, y, x);
                ++at(u, x, y);
                ++at(u, y, x);
            }
        }
    const double pair_threshold = zeta * (n_ - 1);
    d_.assign(n * n, VertexSet(n_));
    for (Vertex x = 0; x < n_; ++x)
        for (Vertex y = 0; y < n_; ++y) {
            if (x == y) continue;
            for (Vertex v = 0; v < n_; ++v)
                if (v != x && v != y && at(v, x, y) >= pair_threshold - kEps) d_[x * n + y].insert(v);
        }
    connectable_.assign(n * n * n, 0);
    const double threshold = zeta * n_;
    parallel_for(n, [&](std::size_t x) {
        for (Vertex y = 0; y < n_; ++y)
            for (Vertex z = 0; z < n_; ++z) {
                if (static_cast<Vertex>(x) == y || y == z || static_cast<Vertex>(x) == z) continue;
                VertexSet w = f.completions(x, y, z);
                const int c = intersection_size(w, d_[x * n + y], d_[y * n + z]);
                connectable_[(x * n + y) * n + z] = c >= threshold - kEps;
            }
    });
}

VertexSet TripleIndex::witness(Vertex x, Vertex y, Vertex z) const {
    const std::size_t n = n_;
    if (x == y || y == z || x == z) return VertexSet(n_);
    VertexSet w = f_->completions(x, y, z);
    w &= d_[x * n + y];
    w &= d_[y * n + z];
    return w;
}

bool TripleIndex::link_bridge(Vertex v, Vertex x, Vertex y, Vertex z) const {
    const std::size_t n = n_;
    if (x == y || y == z || x == z || v == x || v == y || v == z) return false;
    return d_[x * n + y].contains(v) && d_[y * n + z].contains(v) && f_->host().has_edge({x, y, z, v});
}

std::size_t TripleIndex::num_connectable() const {
    std::size_t c = 0;
    for (char b : connectable_) c += b != 0;
    return c;
}

std::vector<Quad> bridges4(const TripleIndex& idx) {
    std::vector<Quad> out;
    const Hypergraph& h = idx.family().host();
    for (const auto& e : h.edges()) {
        Quad q{e[0], e[1], e[2], e[3]};
        do {
            if (idx.connectable(q[0], q[1], q[2]) && idx.connectable(q[1], q[2], q[3])) out.push_back(q);
        } while (std::next_permutation(q.begin(), q.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- verifiers

SetupCheck check_setup3(const Setup3& s, double alpha, double mu, double beta, int ell) {
    SetupCheck c;
    const VertexSet& v = s.vertices();
    const double n = v.size();
    if (!(alpha > 0.0 && alpha < 1.0 / 3.0)) {
        c.unmet = "alpha in (0,1/3)";
        return c;
    }
    if (!(mu > 0.0)) {
        c.unmet = "mu > 0";
        return c;
    }
    if (ell < 3 || ell % 2 == 0 || !(beta > 0.0)) {
        c.unmet = "beta > 0 and odd ell >= 3";
        return c;
    }
    const auto verts = v.members();
    std::vector<std::size_t> deg(s.universe(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            VertexSet z = s.completions(verts[i], verts[j]) & v;
            z.for_each([&](Vertex w) { ++deg[w]; });
        }
    // each edge xyz is seen from its three pairs; deg[w] counts it once for w
    const double need = (5.0 / 9.0 + alpha) * n * n / 2.0;
    for (Vertex w : verts)
        if (static_cast<double>(deg[w]) < need - kEps) {
            c.unmet = "minimum vertex degree at vertex " + std::to_string(w);
            return c;
        }
    for (Vertex w : verts) {
        const Graph* r = s.robust_graph(w);
        if (!r) {
            c.unmet = "missing robust graph at vertex " + std::to_string(w);
            return c;
        }
        const VertexSet& u = r->vertices();
        if (!u.is_subset_of(v) || u.contains(w)) {
            c.unmet = "robust graph outside the link at vertex " + std::to_string(w);
            return c;
        }
        const double us = u.size();
        if (us < (2.0 / 3.0 + alpha / 2.0) * n - kEps) {
            c.unmet = "clause (i) at vertex " + std::to_string(w);
            return c;
        }
        std::size_t cut = 0;
        VertexSet rest = v - u;
        u.for_each([&](Vertex x) { cut += intersection_size(s.completions(x, w), rest); });
        if (static_cast<double>(cut) > mu * n * n + kEps) {
            c.unmet = "clause (ii) at vertex " + std::to_string(w);
            return c;
        }
        if (static_cast<double>(r->num_edges()) < (5.0 / 9.0 + alpha / 2.0) * n * n / 2.0 - (n - us) * (n - us) / 2.0 - kEps) {
            c.unmet = "clause (iii) at vertex " + std::to_string(w);
            return c;
        }
        // R_v must be an induced subgraph of the link
        bool induced = true;
        u.for_each([&](Vertex x) {
            if (!induced) return;
            VertexSet link_nb = s.completions(x, w) & u;
            if (!(link_nb == r->neighbors(x))) induced = false;
        });
        if (!induced) {
            c.unmet = "robust graph not induced at vertex " + std::to_string(w);
            return c;
        }
        if (!is_robust(*r, beta, ell).robust) {
            c.unmet = "robustness at vertex " + std::to_string(w);
            return c;
        }
    }
    c.holds = true;
    return c;
}

SetupCheck check_setup4(const RobustFamily4& f, double alpha, double beta, int ell) {
    SetupCheck c;
    const double n = f.n();
    if (!(alpha > 0.0 && alpha < 1.0 / 3.0)) {
        c.unmet = "alpha in (0,1/3)";
        return c;
    }
    if (ell < 3 || ell % 2 == 0 || !(beta > 0.0)) {
        c.unmet = "beta > 0 and odd ell >= 3";
        return c;
    }
    const double mu = alpha * alpha * alpha / 18.0;
    const double need = (5.0 / 9.0 + alpha) * n * n / 2.0;
    const bool reuse = beta == f.params().beta && ell == f.params().ell;
    for (Vertex u = 0; u < f.n(); ++u)
        for (Vertex v = u + 1; v < f.n(); ++v) {
            const std::string where = pair_name(u, v);
            const Graph& link = f.link(u, v);
            if (static_cast<double>(link.num_edges()) < need - kEps) {
                c.unmet = "minimum pair degree at " + where;
                return c;
            }
            const Graph& r = f.robust_graph(u, v);
            const VertexSet& uu = r.vertices();
            const double us = uu.size();
            if (us < (2.0 / 3.0 + alpha / 2.0) * n - kEps) {
                c.unmet = "clause (i) at " + where;
                return c;
            }
            if (static_cast<double>(link.cut(uu, link.vertices() - uu)) > mu * n * n + kEps) {
                c.unmet = "clause (ii) at " + where;
                return c;
            }
            if (static_cast<double>(r.num_edges()) < (5.0 / 9.0 + alpha / 2.0) * n * n / 2.0 - (n - us) * (n - us) / 2.0 - kEps) {
                c.unmet = "clause (iii) at " + where;
                return c;
            }
            const bool robust = reuse ? f.certificate(u, v).robust : is_robust(r, beta, ell).robust;
            if (!robust) {
                c.unmet = "robustness at " + where;
                return c;
            }
        }
    c.holds = true;
    return c;
}

namespace {

void finish(LemmaReport& r) {
    if (r.relation == "<=")
        r.margin = r.rhs - r.lhs;
    else
        r.margin = r.lhs - r.rhs;
    bool ok = r.relation == ">" ? r.lhs > r.rhs : r.margin >= -kEps * std::max(1.0, std::fabs(r.rhs));
    if (r.lhs2 && r.rhs2) ok = ok && *r.lhs2 > *r.rhs2;
    r.pass = !r.hypotheses_hold || ok;
}

void zeta_in(LemmaReport& r, double zeta, double hi, const char* what) {
    if (r.unmet.empty() && !(zeta > 0.0 && zeta < hi)) r.unmet = what;
}

void setup3_into(LemmaReport& r, const Setup3& s, const LemmaParams& p, double mu) {
    r.mu_assumed = mu;
    SetupCheck c = check_setup3(s, p.alpha, mu, p.beta, p.ell);
    if (!c.holds) r.unmet = c.unmet;
}

void setup4_into(LemmaReport& r, const TripleIndex& idx, const LemmaParams& p) {
    r.mu_assumed = p.alpha * p.alpha * p.alpha / 18.0;
    SetupCheck c = check_setup4(idx.family(), p.alpha, p.beta, p.ell);
    if (!c.holds) r.unmet = c.unmet;
}

void check_zeta_matches(double index_zeta, double zeta) {
    if (std::fabs(index_zeta - zeta) > 1e-12) throw std::invalid_argument("index zeta differs from the lemma zeta");
}

}  // namespace

LemmaReport verify_F41(const Setup3& s, const PairIndex& idx, const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    LemmaReport r;
    r.lemma = "F41";
    r.relation = "<=";
    setup3_into(r, s, p, p.alpha / 4.0);
    zeta_in(r, p.zeta, 1.0 + kEps, "zeta in (0,1]");
    const double n = s.vertices().size();
    double lhs = 0.0;
    s.vertices().for_each([&](Vertex z) {
        const Graph* g = s.robust_graph(z);
        if (!g) return;
        for (auto [x, y] : g->edge_list())
            if (!idx.connectable(x, y)) lhs += 2.0;  // (x,y,z) and (y,x,z)
    });
    r.lhs = lhs;
    r.rhs = p.zeta * n * n * n;
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_NB3(const Setup3& s, const PairIndex& idx, const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    LemmaReport r;
    r.lemma = "NB3";
    r.relation = "<=";
    setup3_into(r, s, p, p.alpha / 4.0);
    zeta_in(r, p.zeta, 1.0 + kEps, "zeta in (0,1]");
    const double n = s.vertices().size();
    double total = 0.0, bridges = 0.0;
    const auto verts = s.vertices().members();
    for (Vertex x : verts)
        for (Vertex y : verts) {
            if (x == y) continue;
            VertexSet zs = s.completions(x, y) & s.vertices();
            total += zs.size();
            if (!idx.connectable(x, y)) continue;
            zs.for_each([&](Vertex z) {
                if (idx.connectable(y, z)) bridges += 1.0;
            });
        }
    r.lhs = total - bridges;
    r.rhs = (2.0 / 9.0 + p.alpha / 2.0 + 2.0 * p.zeta) * n * n * n;
    if (p.zeta < p.alpha / 4.0) {
        r.lhs2 = bridges;
        r.rhs2 = n * n * n / 3.0;
    }
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_L35(const Setup3& s, const PairIndex& idx, const Hypergraph& h_prime, const VertexSet& v_prime,
                       const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    if (h_prime.k() != 3 || h_prime.n() != s.universe())
        throw std::invalid_argument("H' must be 3-uniform on the same universe");
    LemmaReport r;
    r.lemma = "L35";
    r.relation = ">=";
    setup3_into(r, s, p, p.alpha * p.alpha * p.alpha / 18.0);
    zeta_in(r, p.zeta, p.alpha * p.alpha / 9.0, "zeta in (0,alpha^2/9)");
    const VertexSet& v = s.vertices();
    const double n = v.size();
    if (r.unmet.empty()) {
        VertexSet sym = (v - v_prime) | (v_prime - v);
        if (sym.size() > p.alpha * n / 18.0 + kEps) r.unmet = "|V symmetric difference V'| <= alpha n/18";
    }
    if (r.unmet.empty()) {
        for (const auto& e : h_prime.edges())
            for (Vertex w : e)
                if (!v_prime.contains(w)) {
                    r.unmet = "H' has an edge outside V'";
                    break;
                }
    }
    if (r.unmet.empty()) {
        std::vector<std::size_t> deg(h_prime.n(), 0);
        for (const auto& e : h_prime.edges())
            for (Vertex w : e) ++deg[w];
        const double need = (5.0 / 9.0 + p.alpha) * n * n / 2.0;
        v_prime.for_each([&](Vertex w) {
            if (r.unmet.empty() && static_cast<double>(deg[w]) < need - kEps)
                r.unmet = "minimum vertex degree of H' at vertex " + std::to_string(w);
        });
    }
    double lhs = 0.0;
    for (const auto& t : bridges3(s, idx))
        if (h_prime.has_edge({t[0], t[1], t[2]})) lhs += 1.0;
    r.lhs = lhs;
    r.rhs = p.alpha * n * n * n / 2.0;
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_F41analog(const TripleIndex& idx, const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    LemmaReport r;
    r.lemma = "F41analog";
    r.relation = "<=";
    setup4_into(r, idx, p);
    zeta_in(r, p.zeta, 1.0 + kEps, "zeta in (0,1]");
    const int n = idx.n();
    double lhs = 0.0;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            for (Vertex c = 0; c < n; ++c) {
                if (a == b || b == c || a == c || idx.connectable(a, b, c)) continue;
                lhs += idx.witness(a, b, c).size();
            }
    r.lhs = lhs;
    r.rhs = p.zeta * std::pow(static_cast<double>(n), 4);
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_NCT(const TripleIndex& idx, const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    LemmaReport r;
    r.lemma = "NCT";
    r.relation = ">=";
    setup4_into(r, idx, p);
    zeta_in(r, p.zeta, p.alpha / 4.0, "zeta in (0,alpha/4)");
    const double n = idx.n();
    // the counting argument compares n(n-1)^3/3 with (1/3 - zeta) n^4
    if (r.unmet.empty() && n * std::pow(n - 1.0, 3) / 3.0 < (1.0 / 3.0 - p.zeta) * std::pow(n, 4) - kEps)
        r.unmet = "finite-n step: n(n-1)^3/3 >= (1/3 - zeta) n^4";
    r.lhs = static_cast<double>(idx.num_connectable());
    r.rhs = (1.0 / 3.0 - 2.0 * p.zeta) * n * n * n;
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_NB4(const TripleIndex& idx, const LemmaParams& p) {
    check_zeta_matches(idx.zeta(), p.zeta);
    LemmaReport r;
    r.lemma = "NB4";
    r.relation = ">=";
    setup4_into(r, idx, p);
    zeta_in(r, p.zeta, p.alpha / 4.0, "zeta in (0,alpha/4)");
    const double n = idx.n();
    // the counting argument uses (5/9+alpha) n^3 (n-1) >= (5/9+alpha-zeta) n^4
    if (r.unmet.empty() && (5.0 / 9.0 + p.alpha) / n > p.zeta + kEps)
        r.unmet = "finite-n step: n >= (5/9 + alpha)/zeta";
    r.lhs = static_cast<double>(bridges4(idx).size());
    r.rhs = (1.0 / 9.0 - 7.0 * p.zeta) * std::pow(n, 4);
    r.hypotheses_hold = r.unmet.empty();
    finish(r);
    return r;
}

LemmaReport verify_counting_lemma(const std::string& id, const LemmaInstance& inst) {
    auto need3 = [&] {
        if (!inst.setup3 || !inst.pairs) throw std::invalid_argument(id + " needs a 3-uniform family and pair index");
    };
    auto need4 = [&] {
        if (!inst.triples) throw std::invalid_argument(id + " needs a triple index");
    };
    if (id == "F41") {
        need3();
        return verify_F41(*inst.setup3, *inst.pairs, inst.params);
    }
    if (id == "NB3") {
        need3();
        return verify_NB3(*inst.setup3, *inst.pairs, inst.params);
    }
    if (id == "L35") {
        need3();
        if (!inst.h_prime || !inst.v_prime) throw std::invalid_argument("L35 needs H' and V'");
        return verify_L35(*inst.setup3, *inst.pairs, *inst.h_prime, *inst.v_prime, inst.params);
    }
    if (id == "F41analog") {
        need4();
        return verify_F41analog(*inst.triples, inst.params);
    }
    if (id == "NCT") {
        need4();
        return verify_NCT(*inst.triples, inst.params);
    }
    if (id == "NB4") {
        need4();
        return verify_NB4(*inst.triples, inst.params);
    }
    throw std::invalid_argument("unknown lemma id: " + id);
}

}  // namespace hyperham
