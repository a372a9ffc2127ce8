#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperham/absorption.hpp"

namespace hyperham {

using Json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PipelineConfig {
    ExtractionMode mode = ExtractionMode::desk;
    double alpha = 0.1;
    double mu = 0.025;  // alpha/4
    double beta = 0.01;
    int ell = 3;
    double zeta_star = 0.02;
    double zeta_star2 = 0.01;    // zeta**
    double theta_star = 0.365;   // reservoir ~ 10% of V
    double theta_star2 = 0.05;   // theta**
    int M = 7;                   // cover path vertex count
    int n_abs = -1;              // -1: largest count that fits (at most 3)
    long absorbing_inner = 2;    // inner count of connections inside P_A
    long intermediate_inner = 1; // inner count of connections between cover paths
    bool use_menu = false;     // use the menu values instead of the two above
    std::uint64_t search_budget = 200'000;
    std::uint64_t connect_budget = 200'000;
    std::uint64_t seed = 0;
    int min_n = 12;
    int exhaustive_max_order = 14;
    int reservoir_validation_samples = 0;
    int closing_attempts = 3;  // seeds tried per closing length
    int restarts = 4;          // full reruns from the reservoir stage

    /// Throws ConfigError naming the offending field.
    void validate() const;
    Json to_json() const;
    /// Flat key-value object; unknown keys and wrong types are errors.
    static PipelineConfig from_json(const Json& j);
};

std::string to_string(ExtractionMode m);

struct CoverResult {
    std::vector<Sequence> paths;
    VertexSet uncovered;  // V \ X not on any path
    bool maximal_certified = false;
    int augmented = 0;  // paths produced by the link-skeleton fallback
    std::uint64_t expansions = 0;
};

/// Disjoint M-vertex tight paths avoiding X with connectable end triples
/// (per `idx`), greedy with the link-skeleton fallback when greedy stalls.
CoverResult path_cover(const TripleIndex& idx, const VertexSet& x, const PipelineConfig& cfg);

/// One M-vertex path through u: a 3-uniform path on 3(M+1)/4 vertices in the
/// link of u with u (and further vertices) inserted at every fourth slot.
std::optional<Sequence> augment_path(const TripleIndex& idx, Vertex u, const VertexSet& avail, int m, Rng& rng,
                                     std::uint64_t budget);

struct BlockPartition {
    std::vector<VertexSet> blocks;
    VertexSet leftover;     // B'
    VertexSet exceptional;  // Z_exc
    int block_size = 0;
};

/// Blocks are the vertex sets of the cover paths.
BlockPartition make_block_partition(const CoverResult& cover, const VertexSet& exceptional, int m);

struct SocietyStats {
    int samples = 0;
    int useful = 0;
    std::map<std::string, int> first_failure;  // "i", "ii", "iii"
    double fraction_useful() const { return samples ? static_cast<double>(useful) / samples : 0.0; }
};

/// Samples m-sets of blocks not containing u and checks the three clauses of
/// usefulness exactly.
SocietyStats society_stats(const TripleIndex& idx, Vertex u, const BlockPartition& part, int m, int samples,
                           std::uint64_t seed, const PipelineConfig& cfg);

struct PipelineResult {
    std::optional<Sequence> cycle;
    std::string failed_stage;
    std::string diagnostics;
    Json report;  // deterministic part
    Json timings;
};

PipelineResult find_hamiltonian_absorption(const Hypergraph& h, const PipelineConfig& cfg);

/// Spans all n vertices exactly once and every cyclic k-window is an edge.
bool validate_result(const Hypergraph& h, std::span<const Vertex> cycle);

/// FNV-1a digest of a vertex sequence, as 16 hex digits.
std::string sequence_digest(std::span<const Vertex> seq);

}  // namespace hyperham
