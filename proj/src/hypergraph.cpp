#include "hyperham/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace hyperham {

namespace {

constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;

std::shared_ptr<const BinomialTable> shared_table(int n, int k) {
    return std::make_shared<const BinomialTable>(std::max(n, 1), std::max(k, 1));
}

// Calls f(subset) for every j-subset of `items` in lexicographic order.
template <class F>
void for_each_subset(const std::vector<Vertex>& items, int j, F&& f) {
    const int m = static_cast<int>(items.size());
    if (j > m) return;
    std::vector<int> idx(j);
    for (int i = 0; i < j; ++i) idx[i] = i;
    std::vector<Vertex> cur(j);
    while (true) {
        for (int i = 0; i < j; ++i) cur[i] = items[idx[i]];
        f(cur);
        int i = j - 1;
        while (i >= 0 && idx[i] == m - j + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
}

}  // namespace

BinomialTable::BinomialTable(int max_n, int max_k)
    : max_n_(max_n), max_k_(max_k), table_(static_cast<std::size_t>(max_n + 1) * (max_k + 1), 0) {
    for (int n = 0; n <= max_n; ++n) {
        table_[static_cast<std::size_t>(n) * (max_k + 1)] = 1;
        for (int k = 1; k <= std::min(n, max_k); ++k) {
            std::uint64_t a = (k <= n - 1) ? table_[static_cast<std::size_t>(n - 1) * (max_k + 1) + k] : 0;
            std::uint64_t b = table_[static_cast<std::size_t>(n - 1) * (max_k + 1) + k - 1];
            std::uint64_t s = a + b;
            table_[static_cast<std::size_t>(n) * (max_k + 1) + k] =
                (s < a) ? std::numeric_limits<std::uint64_t>::max() : s;
        }
    }
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

Hypergraph::Hypergraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n), edges_(std::move(edges)) {
    if (k < 2 || k > 8) throw std::invalid_argument("uniformity must be in 2..8");
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    binom_ = shared_table(n, k);
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != k) throw std::invalid_argument("edge has wrong size");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("vertex out of range");
            if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("repeated vertex in edge");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");

    const std::uint64_t total = (*binom_)(n, k);
    use_bitmap_ = total <= kBitmapLimit;
    if (use_bitmap_) {
        bitmap_.assign((total + 63) / 64, 0);
        for (const auto& e : edges_) {
            std::uint64_t r = rank(e);
            bitmap_[r >> 6] |= std::uint64_t{1} << (r & 63);
        }
    } else {
        hashed_.reserve(edges_.size() * 2);
        for (const auto& e : edges_) hashed_.insert(rank(e));
    }
}

Hypergraph Hypergraph::complete(int k, int n) {
    std::vector<Edge> edges;
    std::vector<Vertex> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for_each_subset(all, k, [&](const std::vector<Vertex>& s) { edges.push_back(s); });
    return Hypergraph(k, n, std::move(edges));
}

std::uint64_t Hypergraph::rank(std::span<const Vertex> sorted) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) r += (*binom_)(sorted[i], static_cast<int>(i) + 1);
    return r;
}

bool Hypergraph::has_edge(std::span<const Vertex> vs) const {
    if (static_cast<int>(vs.size()) != k_) return false;
    Vertex buf[8];
    std::copy(vs.begin(), vs.end(), buf);
    std::sort(buf, buf + k_);
    for (int i = 0; i < k_; ++i) {
        if (buf[i] < 0 || buf[i] >= n_) return false;
        if (i > 0 && buf[i] == buf[i - 1]) return false;
    }
    std::uint64_t r = rank(std::span<const Vertex>(buf, k_));
    if (use_bitmap_) return (bitmap_[r >> 6] >> (r & 63)) & 1u;
    return hashed_.count(r) > 0;
}

std::size_t degree(const Hypergraph& h, const VertexSet& s) {
    const int sz = s.size();
    if (sz > h.k()) throw std::invalid_argument("degree: |S| exceeds uniformity");
    auto members = s.members();
    for (Vertex v : members)
        if (v >= h.n()) throw std::invalid_argument("degree: vertex out of range");
    // Enumerate completions when that is cheaper than scanning the edge list.
    std::uint64_t completions = binomial(h.n() - sz, h.k() - sz);
    if (completions < h.num_edges()) {
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < h.n(); ++v)
            if (!s.contains(v)) rest.push_back(v);
        std::size_t count = 0;
        std::vector<Vertex> e(h.k());
        for_each_subset(rest, h.k() - sz, [&](const std::vector<Vertex>& c) {
            std::copy(members.begin(), members.end(), e.begin());
            std::copy(c.begin(), c.end(), e.begin() + sz);
            if (h.has_edge(e)) ++count;
        });
        return count;
    }
    std::size_t count = 0;
    for (const auto& e : h.edges()) {
        bool all = true;
        for (Vertex v : members)
            if (!std::binary_search(e.begin(), e.end(), v)) {
                all = false;
                break;
            }
        if (all) ++count;
    }
    return count;
}

MinDegree min_j_degree(const Hypergraph& h, int j) {
    if (j < 1 || j > h.k()) throw std::invalid_argument("min_j_degree: j out of range");
    const int n = h.n();
    if (n < j) return {0, VertexSet(n)};
    BinomialTable bt(std::max(n, 1), j);
    std::vector<std::uint64_t> counts(bt(n, j), 0);
    for (const auto& e : h.edges()) {
        for_each_subset(e, j, [&](const std::vector<Vertex>& s) {
            std::uint64_t r = 0;
            for (int i = 0; i < j; ++i) r += bt(s[i], i + 1);
            ++counts[r];
        });
    }
    // Lexicographic scan so that ties resolve to the lexicographically first set.
    std::vector<Vertex> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    MinDegree best;
    bool first = true;
    for_each_subset(all, j, [&](const std::vector<Vertex>& s) {
        std::uint64_t r = 0;
        for (int i = 0; i < j; ++i) r += bt(s[i], i + 1);
        if (first || counts[r] < best.value) {
            best.value = counts[r];
            best.witness = VertexSet::from_vector(n, s);
            first = false;
        }
    });
    return best;
}

Relabeled link(const Hypergraph& h, const VertexSet& s, bool drop_anchor) {
    const int sz = s.size();
    if (sz >= h.k()) throw std::invalid_argument("link: |S| must be below uniformity");
    Relabeled out;
    std::vector<Vertex> new_id(h.n(), -1);
    int n_new = h.n();
    if (drop_anchor) {
        n_new = 0;
        for (Vertex v = 0; v < h.n(); ++v)
            if (!s.contains(v)) {
                new_id[v] = n_new++;
                out.to_original.push_back(v);
            }
    } else {
        for (Vertex v = 0; v < h.n(); ++v) {
            new_id[v] = v;
            out.to_original.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        int hit = 0;
        for (Vertex v : e)
            if (s.contains(v)) ++hit;
        if (hit != sz) continue;
        Edge r;
        r.reserve(h.k() - sz);
        for (Vertex v : e)
            if (!s.contains(v)) r.push_back(new_id[v]);
        edges.push_back(std::move(r));
    }
    out.graph = Hypergraph(h.k() - sz, n_new, std::move(edges));
    return out;
}

Relabeled induced(const Hypergraph& h, const VertexSet& u) {
    Relabeled out;
    std::vector<Vertex> new_id(h.n(), -1);
    int n_new = 0;
    for (Vertex v = 0; v < h.n(); ++v)
        if (u.contains(v)) {
            new_id[v] = n_new++;
            out.to_original.push_back(v);
        }
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        bool inside = true;
        for (Vertex v : e)
            if (!u.contains(v)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        Edge r;
        for (Vertex v : e) r.push_back(new_id[v]);
        edges.push_back(std::move(r));
    }
    out.graph = Hypergraph(h.k(), n_new, std::move(edges));
    return out;
}

Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int k = -1;
    int n = -1;
    std::vector<Edge> edges;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<long long> nums;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                throw ParseError("malformed line", line_no);
            }
            if (pos != tok.size()) throw ParseError("malformed line", line_no);
            nums.push_back(v);
        }
        if (k < 0) {
            if (nums.size() != 2 || nums[0] < 2 || nums[0] > 8 || nums[1] < 0 || nums[1] > 1'000'000)
                throw ParseError("malformed header", line_no);
            k = static_cast<int>(nums[0]);
            n = static_cast<int>(nums[1]);
            continue;
        }
        if (static_cast<int>(nums.size()) != k) throw ParseError("malformed line", line_no);
        Edge e;
        for (std::size_t i = 0; i < nums.size(); ++i) {
            if (nums[i] < 0 || nums[i] >= n) throw ParseError("vertex out of range", line_no);
            if (i > 0 && nums[i] <= nums[i - 1]) throw ParseError("edge not strictly ascending", line_no);
            e.push_back(static_cast<Vertex>(nums[i]));
        }
        std::ostringstream canon;
        for (Vertex v : e) canon << v << ' ';
        if (!seen.insert(canon.str()).second) throw ParseError("duplicate edge", line_no);
        edges.push_back(std::move(e));
    }
    if (k < 0) throw ParseError("missing header", line_no + 1);
    return Hypergraph(k, n, std::move(edges));
}

std::string serialize_hypergraph(const Hypergraph& h) {
    std::ostringstream out;
    out << h.k() << ' ' << h.n() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
    return out.str();
}

Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_hypergraph(ss.str());
}

void write_hypergraph_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_hypergraph(h);
}

CompletionIndex::CompletionIndex(const Hypergraph& h) : host_(&h) {
    const int k = h.k();
    sets_.assign(binomial(h.n(), k - 1), VertexSet(h.n()));
    std::vector<Vertex> tail(k - 1);
    for (const auto& e : h.edges()) {
        for (int skip = 0; skip < k; ++skip) {
            int t = 0;
            for (int i = 0; i < k; ++i)
                if (i != skip) tail[t++] = e[i];
            sets_[h.rank(tail)].insert(e[skip]);
        }
    }
}

const VertexSet& CompletionIndex::completions(std::span<const Vertex> tail) const {
    Vertex buf[8];
    const std::size_t m = tail.size();
    std::copy(tail.begin(), tail.end(), buf);
    std::sort(buf, buf + m);
    return sets_[host_->rank(std::span<const Vertex>(buf, m))];
}

}  // namespace hyperham

namespace hyperham {

std::string VertexSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](Vertex v) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    });
    return out + "}";
}

}  // namespace hyperham
