#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hyperham {

/// Seeded generator with platform-independent draws.
///
/// std::uniform_*_distribution output is implementation-defined, so all
/// reductions are done here on top of mt19937_64 (whose output sequence is
/// fixed by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(mix(seed)) {}

    /// Independent stream derived from (seed, stream).
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t r = eng_();
            if (r >= threshold) return r % bound;
        }
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform in [0,1) with 53 bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
};

}  // namespace hyperham
