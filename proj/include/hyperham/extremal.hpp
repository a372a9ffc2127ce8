#pragma once

#include <cstdint>
#include <stdexcept>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

struct LabeledPartition {
    VertexSet x;
    VertexSet y;
    int n = 0;
    int forbidden = 0;  // the excluded value of |e ∩ X|
};

struct Construction {
    Hypergraph graph;
    LabeledPartition partition;
};

/// 4-uniform, X = {0..2n/3-1}, e is an edge iff |e ∩ X| != 2.
Construction construction_a(int n);
/// Same with |e ∩ X| != 3.
Construction construction_b(int n);
/// Shared generator: forbidden intersection size as a parameter.
Construction partition_construction(int n, int forbidden);

/// Every k-subset independently with probability p, in lexicographic order.
Hypergraph random_hypergraph(int n, int k, double p, std::uint64_t seed);

class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RepairedSample {
    Hypergraph graph;
    std::size_t repairs = 0;
    int resamples = 0;
};

/// 4-uniform sample with delta_2 >= target. Deficient pairs are repaired by
/// adding the lexicographically first missing quadruple through the
/// currently worst pair.
RepairedSample random_with_min_pair_degree(int n, std::uint64_t target, double p, std::uint64_t seed,
                                           int max_retries);

}  // namespace hyperham
