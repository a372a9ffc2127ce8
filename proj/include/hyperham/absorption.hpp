#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hyperham/connector.hpp"

namespace hyperham {

using Sextuple = std::array<Vertex, 6>;
using Quadruple = std::array<Vertex, 4>;

/// (u1..u4, x1..x4, w1 w2 w3)
struct Elf {
    Quadruple u{};
    Quadruple x{};
    std::array<Vertex, 3> w{};

    Sequence long_path() const;   // u x w
    Sequence short_path() const;  // u w
};

struct SearchOptions {
    std::uint64_t budget = 200'000;
    std::uint64_t seed = 0;
};

/// 3-uniform paths b1..b6 in the joint link H_a ∩ H_x (just H_x when a < 0)
/// whose end triples are connectable in H, avoiding `forbidden`, a and x.
/// K(3)_{2,2,2} search in the tripartite hypergraph of connectable
/// joint-link triples first, then a direct DFS.
std::vector<Sextuple> joint_link_paths(const TripleIndex& idx, Vertex a, Vertex x, std::size_t limit,
                                       const VertexSet& forbidden, const SearchOptions& opt);

/// b1..b6 is a 3-uniform path in the link of v.
bool is_link_path(const Hypergraph& h, Vertex v, const Sextuple& b);

/// 11-tuples with both u x w and u w tight paths and connectable (u1,u2,u3),
/// (w1,w2,w3). K(4)_{3,3,3,2} search in the bridge hypergraph first, then a
/// direct DFS. Returned elves are pairwise disjoint.
std::vector<Elf> find_elves(const TripleIndex& idx, std::size_t limit, const VertexSet& forbidden,
                            const SearchOptions& opt);

struct Absorber {
    std::optional<Quadruple> target;  // a; absent for generic absorbers
    std::array<Sextuple, 4> b{};
    Elf elf;

    /// b_i1 b_i2 b_i3 x_i b_i4 b_i5 b_i6 for i < 4, then u1..u4 w1 w2 w3.
    std::array<Sequence, 5> paths() const;
    std::vector<Vertex> vertices() const;  // all 35
    /// After absorbing z: z_i replaces x_i, and x1..x4 join the fifth path.
    std::array<Sequence, 5> paths_after(const Quadruple& z) const;
};

struct AbsorberCheck {
    bool ok = false;
    std::string message;
};

/// Re-verifies every invariant (distinctness, link paths, elf paths,
/// connectable ends of all five paths).
AbsorberCheck verify_absorber(const TripleIndex& idx, const Absorber& ab);

/// Every b_i is a link path of z_i (so z can be swapped in).
bool swap_feasible(const Hypergraph& h, const Absorber& ab, const Quadruple& z);

struct AbsorberSearch {
    std::optional<Absorber> absorber;
    std::string stage;  // where the search stopped when nothing was found
    std::uint64_t expansions = 0;
};

/// One elf, then four joint-link paths (a_i, x_i) with cumulative
/// disjointness. `target` absent gives a generic absorber.
AbsorberSearch find_absorber(const TripleIndex& idx, const std::optional<Quadruple>& target, const VertexSet& forbidden,
                             const SearchOptions& opt);

struct SegmentInfo {
    int absorber = -1;  // -1 for the lone path when there are no absorbers
    int path = 0;       // 0..4
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct AbsorbingConfig {
    int n_abs = 1;
    long connection_inner = 2;
    double theta_star = 0.3;
    bool enforce_size = false;  // |V(P_A)| <= theta* n
    SearchOptions search;
    ConnectOptions connect;
};

struct AbsorbingPath {
    Sequence path;
    std::vector<Absorber> absorbers;
    std::vector<SegmentInfo> segments;
    std::vector<Sequence> connections;
    bool size_clause = true;  // |V(P_A)| <= theta* n
};

struct AbsorbingFailure {
    std::string stage;  // "absorber-collection" | "connection" | "size"
    std::string diagnostics;
};

/// Absorbers collected disjointly outside R, their five paths joined in
/// order by connect4 paths outside R.
std::variant<AbsorbingPath, AbsorbingFailure> build_absorbing_path(const TripleIndex& idx, const VertexSet& reservoir,
                                                                   const AbsorbingConfig& cfg);

class AbsorbError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AbsorbOutcome {
    Sequence path;
    std::vector<std::pair<int, Quadruple>> assignment;  // absorber index, z in slot order
};

/// Path with the same end triples as P_A and vertex set V(P_A) ∪ Z. Z is
/// split into quadruples first-fit over unused absorbers in seeded order.
AbsorbOutcome absorb(const Hypergraph& h, const AbsorbingPath& ap, const VertexSet& z, std::uint64_t seed = 0);

}  // namespace hyperham
