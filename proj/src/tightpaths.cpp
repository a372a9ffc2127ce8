#include "hyperham/tightpaths.hpp"

#include <algorithm>
#include <unordered_set>

namespace hyperham {

std::string to_string(SeqKind kind) {
    switch (kind) {
        case SeqKind::walk: return "walk";
        case SeqKind::path: return "path";
        case SeqKind::cycle: return "cycle";
    }
    return "?";
}

std::string to_string(BruteResult::Status s) {
    switch (s) {
        case BruteResult::Status::cycle: return "cycle";
        case BruteResult::Status::none: return "none";
        case BruteResult::Status::timeout: return "timeout";
    }
    return "?";
}

Validation validate(std::span<const Vertex> seq, const Hypergraph& h, SeqKind kind) {
    const std::size_t k = h.k();
    const std::size_t len = seq.size();
    if (len < k || (kind == SeqKind::cycle && len < k + 1))
        throw std::invalid_argument("sequence too short for " + to_string(kind));
    Validation v;
    for (std::size_t i = 0; i < len; ++i)
        if (seq[i] < 0 || seq[i] >= h.n()) {
            v.message = "vertex " + std::to_string(seq[i]) + " out of range";
            v.failing_window = static_cast<long>(i);
            return v;
        }
    if (kind != SeqKind::walk) {
        std::vector<char> seen(h.n(), 0);
        for (Vertex x : seq) {
            if (seen[x]) {
                v.duplicate = x;
                v.message = "vertex " + std::to_string(x) + " repeats";
                return v;
            }
            seen[x] = 1;
        }
    }
    const std::size_t windows = kind == SeqKind::cycle ? len : len - k + 1;
    Vertex buf[8];
    for (std::size_t i = 0; i < windows; ++i) {
        for (std::size_t j = 0; j < k; ++j) buf[j] = seq[(i + j) % len];
        ++v.windows_checked;
        if (!h.has_edge(std::span<const Vertex>(buf, k))) {
            v.failing_window = static_cast<long>(i);
            v.message = "window at position " + std::to_string(i) + " is not an edge";
            return v;
        }
    }
    v.ok = true;
    return v;
}

namespace {

// Bitmask DFS state for n <= 16 (masks fit in 32 bits with room to spare).
struct BruteSearch {
    int n = 0;
    int k = 0;
    std::uint64_t budget = 0;
    std::uint64_t expansions = 0;
    bool out_of_budget = false;
    std::vector<std::uint32_t> completions;               // by (k-1)-set mask
    std::vector<std::vector<std::uint32_t>> vertex_edges;  // edge masks through v
    std::vector<int> seq;
    std::uint32_t full = 0;

    bool closes() const {
        // wrap windows: those that include position n-1 -> 0
        for (int s = n - k + 1; s < n; ++s) {
            std::uint32_t m = 0;
            for (int j = 0; j < k; ++j) m |= 1u << seq[(s + j) % n];
            std::uint32_t tail = m & ~(1u << seq[(s + k - 1) % n]);
            if (!(completions[tail] >> seq[(s + k - 1) % n] & 1u)) return false;
        }
        return true;
    }

    bool feasible(std::uint32_t used) const {
        std::uint32_t unvisited = full & ~used;
        std::uint32_t ends = 0;
        const int len = static_cast<int>(seq.size());
        for (int j = 0; j < k - 1 && j < len; ++j) ends |= 1u << seq[j];
        for (int j = std::max(0, len - (k - 1)); j < len; ++j) ends |= 1u << seq[j];
        std::uint32_t allowed = unvisited | ends;
        for (std::uint32_t rest = unvisited; rest; rest &= rest - 1) {
            int u = __builtin_ctz(rest);
            bool ok = false;
            for (std::uint32_t e : vertex_edges[u])
                if ((e & ~allowed) == 0) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    bool dfs(std::uint32_t used) {
        if (++expansions > budget) {
            out_of_budget = true;
            return false;
        }
        const int len = static_cast<int>(seq.size());
        if (len == n) return seq[1] < seq[n - 1] && closes();
        if (!feasible(used)) return false;
        std::uint32_t cand;
        if (len < k - 1) {
            cand = full & ~used;
        } else {
            std::uint32_t tail = 0;
            for (int j = len - (k - 1); j < len; ++j) tail |= 1u << seq[j];
            cand = completions[tail] & ~used;
        }
        for (; cand; cand &= cand - 1) {
            int v = __builtin_ctz(cand);
            seq.push_back(v);
            if (dfs(used | (1u << v))) return true;
            seq.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

BruteResult find_tight_hamiltonian_brute(const Hypergraph& h, std::uint64_t budget, int max_n) {
    if (budget == 0) throw std::invalid_argument("budget must be positive");
    if (h.k() != 3 && h.k() != 4) throw std::invalid_argument("brute force supports k = 3 or 4");
    if (h.n() > max_n || h.n() > 20) throw std::invalid_argument("n exceeds the brute-force cap");
    BruteResult res;
    if (h.n() < h.k() + 1) return res;
    BruteSearch s;
    s.n = h.n();
    s.k = h.k();
    s.budget = budget;
    s.full = (1u << s.n) - 1;
    s.completions.assign(std::size_t{1} << s.n, 0);
    s.vertex_edges.assign(s.n, {});
    for (const auto& e : h.edges()) {
        std::uint32_t m = 0;
        for (Vertex v : e) m |= 1u << v;
        for (Vertex v : e) {
            s.completions[m & ~(1u << v)] |= 1u << v;
            s.vertex_edges[v].push_back(m);
        }
    }
    s.seq.push_back(0);
    bool found = s.dfs(1u);
    res.expansions = s.expansions;
    if (found) {
        res.status = BruteResult::Status::cycle;
        res.cycle = s.seq;
    } else {
        res.status = s.out_of_budget ? BruteResult::Status::timeout : BruteResult::Status::none;
    }
    return res;
}

std::pair<Sequence, Sequence> end_tuples(std::span<const Vertex> path, int k) {
    const std::size_t t = static_cast<std::size_t>(k - 1);
    if (path.size() < t) throw std::invalid_argument("path shorter than k-1");
    return {Sequence(path.begin(), path.begin() + t), Sequence(path.end() - t, path.end())};
}

Sequence splice(const Hypergraph& h, std::span<const Vertex> p, std::span<const Vertex> q,
                std::span<const Vertex> connector) {
    const std::size_t t = static_cast<std::size_t>(h.k() - 1);
    if (p.size() < t || q.size() < t || connector.size() < 2 * t)
        throw SpliceError("splice: pieces shorter than k-1", -1);
    for (std::size_t i = 0; i < t; ++i) {
        if (connector[i] != p[p.size() - t + i]) throw SpliceError("connector start does not match path end", connector[i]);
        if (connector[connector.size() - t + i] != q[i])
            throw SpliceError("connector end does not match path start", connector[connector.size() - t + i]);
    }
    Sequence out(p.begin(), p.end());
    out.insert(out.end(), connector.begin() + t, connector.end() - t);
    out.insert(out.end(), q.begin(), q.end());
    std::unordered_set<Vertex> seen;
    for (Vertex v : out)
        if (!seen.insert(v).second) throw SpliceError("vertex " + std::to_string(v) + " collides", v);
    Validation val = validate(out, h, SeqKind::path);
    if (!val.ok) throw SpliceError("spliced sequence invalid: " + val.message, -1);
    return out;
}

namespace {

struct PathDfs {
    const Hypergraph& h;
    const CompletionIndex& idx;
    const VertexSet& available;
    int m;
    const TuplePredicate& ends_ok;
    std::uint64_t budget;
    std::uint64_t expansions = 0;
    bool out_of_budget = false;
    std::vector<Vertex> order;
    Sequence seq;
    VertexSet used;

    bool tick() {
        if (++expansions > budget) out_of_budget = true;
        return !out_of_budget;
    }

    bool extend() {
        if (!tick()) return false;
        const int k = h.k();
        if (static_cast<int>(seq.size()) == m) {
            return !ends_ok || ends_ok(std::span<const Vertex>(seq.end() - (k - 1), seq.end()));
        }
        VertexSet cand = idx.completions(std::span<const Vertex>(seq.end() - (k - 1), seq.end())) & available;
        cand -= used;
        if (cand.empty()) return false;
        for (Vertex v : order) {
            if (!cand.contains(v)) continue;
            seq.push_back(v);
            used.insert(v);
            if (extend()) return true;
            used.erase(v);
            seq.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }

    bool start(int depth) {
        const int k = h.k();
        if (depth == k - 1) {
            if (ends_ok && !ends_ok(std::span<const Vertex>(seq.begin(), seq.end()))) return false;
            return extend();
        }
        for (Vertex v : order) {
            if (used.contains(v)) continue;
            if (!tick()) return false;
            seq.push_back(v);
            used.insert(v);
            if (start(depth + 1)) return true;
            used.erase(v);
            seq.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

PathSearch find_path_with_ends(const Hypergraph& h, const CompletionIndex& idx, const VertexSet& available, int m,
                               const TuplePredicate& ends_ok, Rng& rng, std::uint64_t budget) {
    PathSearch res;
    if (m < h.k() + 1) throw std::invalid_argument("path vertex count must be at least k+1");
    if (available.size() < m) {
        res.exhaustive = true;
        return res;
    }
    PathDfs d{h, idx, available, m, ends_ok, budget, 0, false, {}, {}, {}};
    d.order = available.members();
    rng.shuffle(d.order);
    d.used = VertexSet(h.n());
    bool found = d.start(0);
    res.expansions = d.expansions;
    if (found) res.path = d.seq;
    res.exhaustive = !found && !d.out_of_budget;
    return res;
}

PathCover greedy_path_cover(const Hypergraph& h, const VertexSet& excluded, int m, const TuplePredicate& ends_ok,
                            std::uint64_t seed, std::uint64_t budget_per_search) {
    if (m < h.k() + 1) throw std::invalid_argument("path vertex count must be at least k+1");
    PathCover cover;
    VertexSet available = excluded.complement();
    if (m > available.size()) {
        cover.uncovered = available;
        cover.maximal_certified = true;
        return cover;
    }
    CompletionIndex idx(h);
    Rng rng(seed);
    while (true) {
        PathSearch s = find_path_with_ends(h, idx, available, m, ends_ok, rng, budget_per_search);
        cover.expansions += s.expansions;
        if (!s.path) {
            cover.maximal_certified = s.exhaustive;
            break;
        }
        for (Vertex v : *s.path) available.erase(v);
        cover.paths.push_back(std::move(*s.path));
    }
    cover.uncovered = available;
    return cover;
}

}  // namespace hyperham

namespace hyperham {

namespace {

struct TemplateDfs {
    int k;
    const CompletionFn& comp;
    Sequence& seq;
    const VertexSet& allowed;
    std::uint64_t budget;
    std::vector<int> free_slots;
    std::vector<Vertex> order;
    VertexSet used;
    std::uint64_t expansions = 0;
    bool out_of_budget = false;

    bool rec(std::size_t j) {
        if (j == free_slots.size()) return true;
        if (++expansions > budget) {
            out_of_budget = true;
            return false;
        }
        const int i = free_slots[j];
        const int len = static_cast<int>(seq.size());
        VertexSet cand = allowed - used;
        Vertex others[8];
        for (int s = std::max(0, i - k + 1); s <= i && s + k <= len && !cand.empty(); ++s) {
            int c = 0;
            bool complete = true;
            for (int t = s; t < s + k; ++t) {
                if (t == i) continue;
                if (seq[t] < 0) {
                    complete = false;
                    break;
                }
                others[c++] = seq[t];
            }
            if (complete) cand &= comp(std::span<const Vertex>(others, c));
        }
        if (cand.empty()) return false;
        for (Vertex v : order) {
            if (!cand.contains(v)) continue;
            seq[i] = v;
            used.insert(v);
            if (rec(j + 1)) return true;
            used.erase(v);
            seq[i] = -1;
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

TemplateFill fill_template(int k, const CompletionFn& comp, Sequence& seq, const VertexSet& allowed, Rng& rng,
                           std::uint64_t budget) {
    if (k < 2 || k > 8) throw std::invalid_argument("fill_template: unsupported k");
    TemplateDfs d{k, comp, seq, allowed, budget, {}, {}, VertexSet(allowed.universe()), 0, false};
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0)
            d.free_slots.push_back(static_cast<int>(i));
        else
            d.used.insert(seq[i]);
    }
    d.order = (allowed - d.used).members();
    rng.shuffle(d.order);
    TemplateFill r;
    r.found = d.rec(0);
    r.expansions = d.expansions;
    r.exhausted = !r.found && !d.out_of_budget;
    return r;
}

}  // namespace hyperham
