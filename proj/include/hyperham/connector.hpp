#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hyperham/connectivity.hpp"
#include "hyperham/tightpaths.hpp"

namespace hyperham {

struct LengthMenu {
    int k = 4;
    long ell = 3;
    std::vector<long> values;  // values[i-1] = inner count for residue i

    long for_residue(int i) const;
};

/// k=4: (32l+49, 8l+10, 16l+23, 24l+36); k=3: (3l+1, 6l+5, 9l+9).
LengthMenu residue_lengths(int k, long ell);

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Pair = std::array<Vertex, 2>;

struct ConnectOptions {
    std::uint64_t budget = 200'000;  // expansions over all strategies
    std::uint64_t seed = 0;
    bool proof_guided = true;
    bool direct = true;
    int pivot_tries = 64;  // (u,w) or pivot samples in the proof-guided search
};

struct ConnectResult {
    std::optional<Sequence> path;  // start tuple + inner + end tuple
    std::string strategy;          // "proof-guided", "direct" or "none"
    std::uint64_t expansions = 0;
    long inner_count = 0;
    int residue = 0;  // 0 when an exact count was requested
    std::string diagnostics;
};

/// ab-xy tight path in a 3-uniform setup with exactly `inner` inner vertices,
/// all from `allowed`. Throws PreconditionError unless both pairs are
/// connectable and disjoint.
ConnectResult connect3(const Setup3& s, const PairIndex& idx, Pair ab, Pair xy, long inner, const VertexSet& allowed,
                       const ConnectOptions& opt);

/// abc-xyz tight path in the 4-uniform host with exactly `inner` inner vertices.
ConnectResult connect4(const TripleIndex& idx, Triple abc, Triple xyz, long inner, const VertexSet& allowed,
                       const ConnectOptions& opt);

/// Same, with the inner count taken from the menu for residue i in 1..4.
ConnectResult connect4_residue(const TripleIndex& idx, Triple abc, Triple xyz, int residue, long ell,
                               const VertexSet& allowed, const ConnectOptions& opt);

struct ReservoirParams {
    double theta_star = 0.3;
    double theta_star2 = 0.1;  // theta**
    long ell = 3;
    std::uint64_t seed = 0;
    int validation_samples = 0;
    /// inner counts by residue 1..4 used for the empirical clause check
    std::array<long, 4> validation_inner{1, 2, 3, 4};
    /// replaces floor(theta*^2 theta** n / (400 l)) when set
    std::optional<std::size_t> budget_override;
    ConnectOptions connect;
};

struct ReservoirValidation {
    std::array<int, 4> attempts{};
    std::array<int, 4> successes{};
};

struct ReservoirState {
    VertexSet reservoir;
    VertexSet used;
    std::size_t budget = 0;
    std::size_t formula_budget = 0;
    double theta_star = 0.0;
    double theta_star2 = 0.0;
    long ell = 3;
    std::uint64_t seed = 0;
    int resamples = 0;
    ReservoirValidation validation;

    VertexSet available() const { return reservoir - used; }
};

struct ReservoirFailure {
    std::string reason;
    int attempts = 0;
    int last_size = 0;
};

/// Bernoulli((3/4) theta*^2) sample with the size clause
/// theta*^2 n/2 <= |R| <= theta*^2 n, resampled up to 10 times.
std::variant<ReservoirState, ReservoirFailure> sample_reservoir(const TripleIndex& idx, const ReservoirParams& p);

/// connect4 inside R \ R'. On success the inner vertices move into R'.
/// Throws BudgetExceeded when |R'| + inner would exceed the budget.
ConnectResult reserve_connect(ReservoirState& state, const TripleIndex& idx, Triple abc, Triple xyz, long inner,
                              const ConnectOptions& opt);

}  // namespace hyperham
