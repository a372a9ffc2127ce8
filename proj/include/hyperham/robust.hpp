#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hyperham/graph.hpp"

namespace hyperham {

/// A positive real kept as mantissa * 2^exponent (mantissa in [1,2)) plus its
/// natural log, so values far below the double range survive.
struct ScaledReal {
    double value = 0.0;  // may underflow to 0
    double log_value = 0.0;
    double mantissa = 0.0;
    long exponent = 0;

    static ScaledReal from_log(double log_value);
    static ScaledReal from_value(double value);
};

struct RobustConstants {
    double mu_prime = 0.0;
    long ell = 0;
    ScaledReal beta;
};

/// mu' = min(mu/4, alpha/72); ell = least odd integer > 8/mu'^2 + 1;
/// beta = (mu'/2)^(6 ell) / 72.
RobustConstants robust_constants(double alpha, double mu);

constexpr int kPathLengthCap = 8;

/// Number of x-y paths with exactly ell edges (all vertices distinct).
std::uint64_t count_paths_fixed_length(const Graph& g, Vertex x, Vertex y, int ell, int cap = kPathLengthCap);

struct RobustCheck {
    bool robust = false;
    Vertex worst_x = -1;
    Vertex worst_y = -1;
    std::uint64_t worst_count = 0;
    double threshold = 0.0;  // beta * |V(G)|^(ell-1)
    double min_ratio = 0.0;  // worst_count / |V(G)|^(ell-1)
};

/// (beta, ell)-robustness over all unordered pairs of V(G); the worst pair is
/// the lexicographically first minimizer.
RobustCheck is_robust(const Graph& g, double beta, int ell);

/// Homomorphic copies of the 3-edge path (ordered walks w0 w1 w2 w3).
double count_walks_length3(const Graph& g);

struct BlakleyRoy {
    double walks = 0.0;
    double bound = 0.0;  // (2 e)^3 / v^2
    double gap = 0.0;
};

BlakleyRoy blakley_roy_gap(const Graph& g);

enum class ExtractionMode { asymptotic, desk };

struct RobustParams {
    double alpha = 0.1;
    double mu = 0.025;
    double beta = 0.05;  // working beta (desk override; asymptotic beta is reported only)
    int ell = 3;
    ExtractionMode mode = ExtractionMode::desk;
    std::uint64_t budget = 200'000;  // subsets tried by the exhaustive fallback
    int exhaustive_max_order = 14;
};

struct RobustCertificate {
    VertexSet u;
    int base_order = 0;  // |V(G)|
    double alpha = 0.0;
    double mu = 0.0;
    ScaledReal beta;
    int ell = 0;
    double min_ratio = 0.0;
    std::uint64_t worst_count = 0;
    std::size_t cut = 0;    // e_G(U, V \ U)
    std::size_t edges = 0;  // e(G[U])
    double size_bound = 0.0;
    double cut_bound = 0.0;
    double edge_bound = 0.0;
    bool clause_size = false;
    bool clause_cut = false;
    bool clause_edges = false;
    bool robust = false;

    bool all_hold() const { return clause_size && clause_cut && clause_edges && robust; }
};

/// Recomputes every recorded quantity of a certificate for G[U].
RobustCertificate certify(const Graph& g, const VertexSet& u, const RobustParams& p);

struct ExtractionResult {
    std::optional<RobustCertificate> certificate;
    std::string failed_clause;  // set when no certificate
    bool used_exhaustive = false;
};

ExtractionResult extract_robust_subgraph(const Graph& g, const RobustParams& p);

struct L36Report {
    bool hypotheses_hold = false;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;  // lhs >= rhs whenever hypotheses hold
    std::string unmet;  // first unmet hypothesis
};

/// Both sides of the ordered-pair count for two graphs on the same vertex set.
L36Report check_lemma_L36(const Graph& g, const Graph& g2, const VertexSet& u, double alpha);

}  // namespace hyperham
