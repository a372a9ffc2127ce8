#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hyperham {

using Vertex = int;

/// Bit-indexed subset of {0..n-1}.
///
/// The universe size is fixed at construction. Binary operations require
/// operands over the same universe.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(int universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
        for (Vertex v : members) insert(v);
    }

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    static VertexSet from_vector(int universe, const std::vector<Vertex>& members) {
        VertexSet s(universe);
        for (Vertex v : members) s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(Vertex v) const {
        return v >= 0 && v < n_ && ((words_[v >> 6] >> (v & 63)) & 1u);
    }
    void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    int size() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// Smallest member, or -1.
    Vertex first() const { return next(0); }

    /// Smallest member >= from, or -1.
    Vertex next(Vertex from) const {
        if (from >= n_) return -1;
        std::size_t wi = static_cast<std::size_t>(from) >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return static_cast<Vertex>(wi * 64 + std::countr_zero(w));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(size());
        for (Vertex v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const {
        VertexSet s(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string to_string() const;

private:
    void trim() {
        if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

inline int intersection_size(const VertexSet& a, const VertexSet& b) {
    const auto& wa = a.words();
    const auto& wb = b.words();
    int c = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) c += std::popcount(wa[i] & wb[i]);
    return c;
}

inline int intersection_size(const VertexSet& a, const VertexSet& b, const VertexSet& c) {
    const auto& wa = a.words();
    const auto& wb = b.words();
    const auto& wc = c.words();
    int r = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) r += std::popcount(wa[i] & wb[i] & wc[i]);
    return r;
}

}  // namespace hyperham
