#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/vertex_set.hpp"

namespace hyperham {

/// Weights on subsets of {0..n-1} and the inclusion probability of V_p.
class WeightSystem {
public:
    WeightSystem(int n, double p);

    int ground_size() const { return n_; }
    double p() const { return p_; }
    /// Adds w to the weight of A (any order, no repeats). w >= 0.
    void add(std::vector<Vertex> a, double w);
    const std::map<std::vector<Vertex>, double>& weights() const { return w_; }

private:
    int n_;
    double p_;
    std::map<std::vector<Vertex>, double> w_;
};

/// Random instance: `support` distinct nonempty subsets of size <= max_set,
/// weights uniform in [0, 1).
WeightSystem random_weight_system(int n, double p, int support, int max_set, std::uint64_t seed);

struct JansonBound {
    double ex = 0.0;
    double delta = 0.0;
    double bound = 1.0;       // exp(-t^2 / (2 Delta))
    bool degenerate = false;  // Delta = 0 with t > 0: bound reported as 0
};

/// Throws invalid_argument unless 0 <= t <= EX.
JansonBound janson_bound(const WeightSystem& ws, double t);

/// Law of X as sorted (value, probability) pairs, by enumerating 2^n outcomes.
/// Throws invalid_argument when n > 20.
std::vector<std::pair<double, double>> exact_distribution(const WeightSystem& ws);

/// P(X <= EX - t), exact.
double janson_exact_tail(const WeightSystem& ws, double t);

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    double lo = 0.0;  // Wilson 95%
    double hi = 0.0;
};

McEstimate wilson_interval(std::uint64_t hits, std::uint64_t trials);

/// Seeded Monte-Carlo estimate of P(X <= EX - t). Trials run in chunks with
/// per-chunk derived seeds, so the result does not depend on the worker count.
McEstimate janson_mc_tail(const WeightSystem& ws, double t, std::uint64_t trials, std::uint64_t seed);

struct TailBound {
    double bound = 0.0;
    bool vacuous = false;  // bound >= 1
};

/// 3 exp(-xi^2 m / (12 k^2)) for |X - EX| >= xi m^k with p = m/|V|.
TailBound bounded_tail_bound(int ground, int m, int k, double xi);

/// Dense bounded weights on all k-subsets of {0..n-1}, indexed by colex rank.
struct KSetWeights {
    int n = 0;
    int k = 0;
    std::vector<double> w;
};

KSetWeights random_kset_weights(int n, int k, std::uint64_t seed);

struct BoundedTailCheck {
    double ex = 0.0;
    double threshold = 0.0;  // xi m^k
    McEstimate empirical;    // two-sided deviation frequency
    TailBound bound;
    bool pass = true;        // empirical <= bound
};

BoundedTailCheck bounded_tail_check(const KSetWeights& w, int m, double xi, std::uint64_t trials, std::uint64_t seed);

struct BlockLayout {
    std::vector<VertexSet> blocks;  // equal sizes M
    VertexSet z;                    // the rest of V
};

/// 12 sqrt(m) exp(-xi^2 m / (48 k^(2k+2))). Requires nu >= m >= k, 0 < xi < 1.
TailBound block_sampling_bound(int nu, int m, int k, double xi);

struct BlockSamplingCheck {
    double d = 0.0;
    double eta = 0.0;       // max(M, |Z|) / |V|
    double xi_lower = 0.0;  // max(8 k^2 eta, 16 k^2 / m)
    bool in_range = true;
    std::string range_violation;
    double expected = 0.0;   // d (Mm)^k, or d (Mm)^k / k! for hypergraphs
    double threshold = 0.0;  // xi (Mm)^k, or / k!
    McEstimate empirical;
    TailBound bound;
    bool pass = true;
};

/// Clause (a): Q a set of ordered k-tuples over V.
BlockSamplingCheck block_sampling_check(const std::vector<std::vector<Vertex>>& q, int k, const BlockLayout& layout,
                                        int m, double xi, std::uint64_t trials, std::uint64_t seed,
                                        bool allow_out_of_range = false);

/// Clause (b): edges of a k-uniform hypergraph G on V.
BlockSamplingCheck block_sampling_check(const Hypergraph& g, const BlockLayout& layout, int m, double xi,
                                        std::uint64_t trials, std::uint64_t seed, bool allow_out_of_range = false);

}  // namespace hyperham
