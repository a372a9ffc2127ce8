#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperham/graph.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/robust.hpp"

namespace hyperham {

/// A 3-uniform host together with one robust link subgraph R_v per vertex.
/// Implemented by RobustFamily3 and by the views H̄_v of a RobustFamily4.
class Setup3 {
public:
    virtual ~Setup3() = default;
    virtual int universe() const = 0;
    virtual const VertexSet& vertices() const = 0;
    /// R_v, or nullptr when v is not a vertex of the host.
    virtual const Graph* robust_graph(Vertex v) const = 0;
    virtual bool has_edge(Vertex a, Vertex b, Vertex c) const = 0;
    /// {z : abz is an edge}.
    virtual VertexSet completions(Vertex a, Vertex b) const = 0;
};

struct FamilyFailure {
    std::string location;  // "vertex 3" or "pair {1,4}"
    std::string clause;
};

class RobustFamily3 : public Setup3 {
public:
    const Hypergraph& host() const { return *host_; }
    const RobustParams& params() const { return params_; }
    const std::vector<RobustCertificate>& certificates() const { return certs_; }
    const std::vector<Graph>& links() const { return links_; }

    int universe() const override { return host_->n(); }
    const VertexSet& vertices() const override { return verts_; }
    const Graph* robust_graph(Vertex v) const override { return &robust_[v]; }
    bool has_edge(Vertex a, Vertex b, Vertex c) const override { return host_->has_edge({a, b, c}); }
    VertexSet completions(Vertex a, Vertex b) const override {
        Vertex t[2] = {a, b};
        return index_->completions(t);
    }
    const CompletionIndex& index() const { return *index_; }

private:
    friend std::variant<RobustFamily3, FamilyFailure> build_family3(const Hypergraph&, const RobustParams&);
    const Hypergraph* host_ = nullptr;
    RobustParams params_;
    VertexSet verts_;
    std::vector<Graph> links_;
    std::vector<Graph> robust_;
    std::vector<RobustCertificate> certs_;
    std::shared_ptr<CompletionIndex> index_;
};

/// The host must outlive the family.
std::variant<RobustFamily3, FamilyFailure> build_family3(const Hypergraph& h3, const RobustParams& p);

class RobustFamily4 {
public:
    const Hypergraph& host() const { return *host_; }
    const RobustParams& params() const { return params_; }
    int n() const { return host_->n(); }
    const RobustCertificate& certificate(Vertex u, Vertex v) const { return certs_[pair_index(u, v)]; }
    const Graph& robust_graph(Vertex u, Vertex v) const { return robust_[pair_index(u, v)]; }
    const Graph& link(Vertex u, Vertex v) const { return links_[pair_index(u, v)]; }
    const CompletionIndex& index() const { return *index_; }
    VertexSet completions(Vertex a, Vertex b, Vertex c) const {
        Vertex t[3] = {a, b, c};
        return index_->completions(t);
    }

private:
    friend std::variant<RobustFamily4, FamilyFailure> build_family4(const Hypergraph&, const RobustParams&);
    const Hypergraph* host_ = nullptr;
    RobustParams params_;
    std::vector<Graph> links_;
    std::vector<Graph> robust_;
    std::vector<RobustCertificate> certs_;
    std::shared_ptr<CompletionIndex> index_;
};

/// The host must outlive the family.
std::variant<RobustFamily4, FamilyFailure> build_family4(const Hypergraph& h4, const RobustParams& p);

/// H̄_v = H_v - v with the robust graphs {R_uv : u != v}.
class LinkView : public Setup3 {
public:
    LinkView(const RobustFamily4& f, Vertex v);
    int universe() const override { return f_->n(); }
    const VertexSet& vertices() const override { return verts_; }
    const Graph* robust_graph(Vertex u) const override {
        return u == v_ || u < 0 || u >= f_->n() ? nullptr : &f_->robust_graph(u, v_);
    }
    bool has_edge(Vertex a, Vertex b, Vertex c) const override;
    VertexSet completions(Vertex a, Vertex b) const override;
    Vertex anchor() const { return v_; }

private:
    const RobustFamily4* f_;
    Vertex v_;
    VertexSet verts_;
};

/// Connectable pairs of a Setup3: witness sets U_xy = {v : xy in E(R_v)}.
class PairIndex {
public:
    PairIndex() = default;
    PairIndex(const Setup3& s, double zeta);
    double zeta() const { return zeta_; }
    const VertexSet& witness(Vertex x, Vertex y) const { return witness_[x * n_ + y]; }
    bool connectable(Vertex x, Vertex y) const { return connectable_[x * n_ + y] != 0; }
    int universe() const { return n_; }
    double threshold() const { return threshold_; }

private:
    int n_ = 0;
    double zeta_ = 0.0;
    double threshold_ = 0.0;
    std::vector<VertexSet> witness_;
    std::vector<char> connectable_;
};

inline PairIndex connectable_pairs(const Setup3& s, double zeta) { return PairIndex(s, zeta); }

using Triple = std::array<Vertex, 3>;
using Quad = std::array<Vertex, 4>;

/// Ordered (x,y,z) with xyz in E and xy, yz connectable.
std::vector<Triple> bridges3(const Setup3& s, const PairIndex& idx);
bool is_bridge3(const Setup3& s, const PairIndex& idx, Vertex x, Vertex y, Vertex z);

/// Connectable triples of a 4-uniform setup.
///
/// Stores, for every v, the number of u with xy in E(R_uv) (the witness count
/// of xy in H̄_v), the sets D[x][y] = {v : xy connectable in H̄_v} and the
/// connectable flag of every ordered triple. Witness sets
/// U_xyz = L(xyz) ∩ D[x][y] ∩ D[y][z] are derived on demand.
class TripleIndex {
public:
    TripleIndex() = default;
    TripleIndex(const RobustFamily4& f, double zeta);
    double zeta() const { return zeta_; }
    int n() const { return n_; }
    const RobustFamily4& family() const { return *f_; }

    VertexSet witness(Vertex x, Vertex y, Vertex z) const;
    bool connectable(Vertex x, Vertex y, Vertex z) const {
        return connectable_[(static_cast<std::size_t>(x) * n_ + y) * n_ + z] != 0;
    }
    bool connectable(std::span<const Vertex> t) const { return t.size() == 3 && connectable(t[0], t[1], t[2]); }
    /// |{u : xy in E(R_uv)}|
    int link_pair_count(Vertex v, Vertex x, Vertex y) const {
        return counts_[(static_cast<std::size_t>(v) * n_ + x) * n_ + y];
    }
    /// xy is connectable in H̄_v at level z (fraction of n-1).
    bool link_pair_connectable(Vertex v, Vertex x, Vertex y, double level) const {
        return x != y && x != v && y != v && link_pair_count(v, x, y) >= level * (n_ - 1) - 1e-9;
    }
    /// (x,y,z) is a zeta-bridge in H̄_v.
    bool link_bridge(Vertex v, Vertex x, Vertex y, Vertex z) const;
    std::size_t num_connectable() const;

private:
    const RobustFamily4* f_ = nullptr;
    int n_ = 0;
    double zeta_ = 0.0;
    std::vector<std::uint16_t> counts_;
    std::vector<VertexSet> d_;
    std::vector<char> connectable_;
};

inline TripleIndex connectable_triples(const RobustFamily4& f, double zeta) { return TripleIndex(f, zeta); }

/// Ordered (a,b,c,d) with abcd in E and (a,b,c), (b,c,d) connectable.
std::vector<Quad> bridges4(const TripleIndex& idx);

// ---------------------------------------------------------------- verifiers

struct SetupCheck {
    bool holds = false;
    std::string unmet;
};

/// 3-uniform setup with the given mu: alpha range, minimum vertex degree and
/// clauses (i)-(iii) plus robustness of every R_v, all relative to |V|.
SetupCheck check_setup3(const Setup3& s, double alpha, double mu, double beta, int ell);
/// 4-uniform setup: pair degree and every R_uv certified with mu = alpha^3/18.
SetupCheck check_setup4(const RobustFamily4& f, double alpha, double beta, int ell);

struct LemmaReport {
    std::string lemma;
    bool hypotheses_hold = false;
    std::string unmet;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // "<=", ">=", ">"
    double margin = 0.0;   // signed slack in the direction of the relation
    bool pass = true;      // relation holds, or hypotheses unmet
    double mu_assumed = 0.0;
    // NB3 only: second clause
    std::optional<double> lhs2, rhs2;
};

struct LemmaParams {
    double alpha = 0.1;
    double beta = 0.05;
    int ell = 3;
    double zeta = 0.01;
};

LemmaReport verify_F41(const Setup3& s, const PairIndex& idx, const LemmaParams& p);
LemmaReport verify_NB3(const Setup3& s, const PairIndex& idx, const LemmaParams& p);
/// `v_prime` is V(H'); h_prime is 3-uniform on the same universe.
LemmaReport verify_L35(const Setup3& s, const PairIndex& idx, const Hypergraph& h_prime, const VertexSet& v_prime,
                       const LemmaParams& p);
LemmaReport verify_F41analog(const TripleIndex& idx, const LemmaParams& p);
LemmaReport verify_NCT(const TripleIndex& idx, const LemmaParams& p);
LemmaReport verify_NB4(const TripleIndex& idx, const LemmaParams& p);

/// Instance for the id-dispatching verifier. Fields not needed by a lemma
/// may be left null.
struct LemmaInstance {
    const Setup3* setup3 = nullptr;
    const PairIndex* pairs = nullptr;
    const TripleIndex* triples = nullptr;
    const Hypergraph* h_prime = nullptr;
    const VertexSet* v_prime = nullptr;
    LemmaParams params;
};

LemmaReport verify_counting_lemma(const std::string& id, const LemmaInstance& inst);

}  // namespace hyperham
