#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

using Sequence = std::vector<Vertex>;

enum class SeqKind { walk, path, cycle };

std::string to_string(SeqKind kind);

struct Validation {
    bool ok = false;
    std::size_t windows_checked = 0;
    // Set on failure: first failing window start (cycle windows wrap), or -1.
    long failing_window = -1;
    // Set on failure when a vertex repeats, or -1.
    Vertex duplicate = -1;
    std::string message;
};

/// Checks every window of k consecutive vertices (cyclically for cycles) and,
/// for paths and cycles, distinctness. Throws invalid_argument if too short.
Validation validate(std::span<const Vertex> seq, const Hypergraph& h, SeqKind kind);

inline bool is_valid(std::span<const Vertex> seq, const Hypergraph& h, SeqKind kind) {
    return validate(seq, h, kind).ok;
}

struct BruteResult {
    enum class Status { cycle, none, timeout };
    Status status = Status::none;
    Sequence cycle;
    std::uint64_t expansions = 0;
};

std::string to_string(BruteResult::Status s);

/// Exhaustive anchored DFS for a tight Hamiltonian cycle (k in {3,4}, n <= max_n).
BruteResult find_tight_hamiltonian_brute(const Hypergraph& h, std::uint64_t budget, int max_n = 16);

/// First and last k-1 vertices in path order.
std::pair<Sequence, Sequence> end_tuples(std::span<const Vertex> path, int k);

class SpliceError : public std::runtime_error {
public:
    SpliceError(const std::string& what, Vertex v) : std::runtime_error(what), vertex_(v) {}
    Vertex vertex() const { return vertex_; }

private:
    Vertex vertex_;
};

/// P followed by the connector's inner vertices followed by Q. The connector
/// must run from P's end tuple to Q's start tuple.
Sequence splice(const Hypergraph& h, std::span<const Vertex> p, std::span<const Vertex> q,
                std::span<const Vertex> connector);

using TuplePredicate = std::function<bool(std::span<const Vertex>)>;

struct PathCover {
    std::vector<Sequence> paths;
    VertexSet uncovered;
    bool maximal_certified = false;  // last search pass was exhaustive
    std::uint64_t expansions = 0;
};

struct PathSearch {
    std::optional<Sequence> path;
    bool exhaustive = false;
    std::uint64_t expansions = 0;
};

/// DFS for one tight path on exactly m vertices inside `available`, whose
/// start and end (k-1)-tuples both satisfy `ends_ok` (path order). Start
/// tuples are tried in a seeded order.
PathSearch find_path_with_ends(const Hypergraph& h, const CompletionIndex& idx, const VertexSet& available, int m,
                               const TuplePredicate& ends_ok, Rng& rng, std::uint64_t budget);

/// Extension oracle: vertices v with tail + v an edge (tail has k-1 vertices).
using CompletionFn = std::function<VertexSet(std::span<const Vertex>)>;

struct TemplateFill {
    bool found = false;
    bool exhausted = false;  // search space exhausted within budget
    std::uint64_t expansions = 0;
};

/// Fills the free slots (-1) of `seq` left to right with distinct vertices
/// from `allowed` not already in `seq`, so that every window of k consecutive
/// slots containing a free slot is an edge. Windows made only of fixed slots
/// are not checked. On success `seq` holds the filled sequence.
TemplateFill fill_template(int k, const CompletionFn& comp, Sequence& seq, const VertexSet& allowed, Rng& rng,
                           std::uint64_t budget);

/// Greedy disjoint cover by m-vertex paths avoiding `excluded`.
PathCover greedy_path_cover(const Hypergraph& h, const VertexSet& excluded, int m, const TuplePredicate& ends_ok,
                            std::uint64_t seed, std::uint64_t budget_per_search = 2'000'000);

}  // namespace hyperham
