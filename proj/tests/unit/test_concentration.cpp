#include <cmath>

#include "doctest.h"
#include "hyperham/concentration.hpp"
#include "hyperham/rng.hpp"

using namespace hyperham;

namespace {

WeightSystem singletons() {
    WeightSystem ws(4, 0.5);
    for (Vertex v = 0; v < 4; ++v) ws.add({v}, 1.0);
    return ws;
}

// independent sums over the support
double naive_ex(const WeightSystem& ws) {
    double s = 0;
    for (const auto& [a, w] : ws.weights()) s += w * std::pow(ws.p(), a.size());
    return s;
}

double naive_delta(const WeightSystem& ws) {
    double s = 0;
    for (const auto& [a, wa] : ws.weights())
        for (const auto& [b, wb] : ws.weights()) {
            std::vector<Vertex> u = a;
            bool meet = false;
            for (Vertex v : b) {
                if (std::find(a.begin(), a.end(), v) != a.end())
                    meet = true;
                else
                    u.push_back(v);
            }
            if (meet) s += wa * wb * std::pow(ws.p(), u.size());
        }
    return s;
}

}  // namespace

TEST_CASE("singleton example") {
    WeightSystem ws = singletons();
    JansonBound b = janson_bound(ws, 1.0);
    CHECK(b.ex == doctest::Approx(2.0));
    CHECK(b.delta == doctest::Approx(2.0));
    CHECK(b.bound == doctest::Approx(std::exp(-0.25)));
    CHECK(janson_exact_tail(ws, 1.0) == doctest::Approx(5.0 / 16.0));
    CHECK(janson_bound(ws, 0.0).bound == 1.0);
    CHECK_THROWS_AS(janson_bound(ws, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(janson_bound(ws, -0.1), std::invalid_argument);
}

TEST_CASE("single weighted set and extreme p") {
    WeightSystem ws(5, 0.3);
    ws.add({1, 3, 4}, 1.0);
    JansonBound b = janson_bound(ws, 0.01);
    CHECK(b.delta == doctest::Approx(std::pow(0.3, 3)));
    CHECK(b.bound == doctest::Approx(std::exp(-0.0001 / (2 * std::pow(0.3, 3)))));
    WeightSystem one(4, 1.0);
    one.add({0, 1}, 2.0);
    CHECK(janson_exact_tail(one, 0.5) == 0.0);
    WeightSystem zero(4, 0.0);
    zero.add({0}, 2.0);
    CHECK(janson_exact_tail(zero, 0.0) == 1.0);
    JansonBound dz = janson_bound(zero, 0.0);
    CHECK(dz.ex == 0.0);
    WeightSystem empty_set(3, 0.5);
    empty_set.add({}, 1.0);
    JansonBound d = janson_bound(empty_set, 0.5);
    CHECK(d.delta == 0.0);
    CHECK(d.degenerate);
    CHECK(d.bound == 0.0);
    CHECK_THROWS_AS(exact_distribution(WeightSystem(21, 0.5)), std::invalid_argument);
}

TEST_CASE("exact tail is dominated on random instances") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        Rng r(s);
        const int n = 2 + static_cast<int>(r.below(9));
        WeightSystem ws = random_weight_system(n, 0.1 + 0.8 * r.uniform(), 1 + static_cast<int>(r.below(8)), 3, s);
        const JansonBound b0 = janson_bound(ws, 0.0);
        CHECK(b0.ex == doctest::Approx(naive_ex(ws)));
        CHECK(b0.delta == doctest::Approx(naive_delta(ws)));
        double diag = 0;
        for (const auto& [a, w] : ws.weights())
            if (!a.empty()) diag += w * w * std::pow(ws.p(), a.size());
        CHECK(b0.delta >= diag - 1e-12);
        double prev = 2.0;
        for (int i = 0; i < 10; ++i) {
            const double t = b0.ex * i / 9.0;
            const JansonBound b = janson_bound(ws, t);
            CHECK(janson_exact_tail(ws, t) <= b.bound + 1e-12);
            CHECK(b.bound <= prev + 1e-15);
            prev = b.bound;
        }
    }
}

TEST_CASE("Monte-Carlo tail: interval, determinism, single trial") {
    WeightSystem ws = singletons();
    McEstimate e = janson_mc_tail(ws, 1.0, 20000, 9);
    CHECK(e.lo <= 5.0 / 16.0);
    CHECK(e.hi >= 5.0 / 16.0);
    McEstimate again = janson_mc_tail(ws, 1.0, 20000, 9);
    CHECK(again.hits == e.hits);
    McEstimate one = janson_mc_tail(ws, 1.0, 1, 3);
    CHECK((one.estimate == 0.0 || one.estimate == 1.0));
    CHECK_THROWS(janson_mc_tail(ws, 1.0, 0, 3));
    McEstimate w = wilson_interval(0, 10);
    CHECK(w.lo == 0.0);
    CHECK(w.hi > 0.0);
}

TEST_CASE("bounded weights corollary") {
    TailBound b = bounded_tail_bound(400, 200, 2, 0.5);
    CHECK(b.bound == doctest::Approx(3.0 * std::exp(-0.25 * 200 / 48.0)));
    CHECK(bounded_tail_bound(100, 12, 1, 0.999).bound == doctest::Approx(3.0 * std::exp(-0.998001 / 1.0)));
    CHECK(bounded_tail_bound(10, 5, 2, 0.5).vacuous);
    CHECK_FALSE(bounded_tail_bound(100000, 50000, 1, 0.5).vacuous);
    CHECK_THROWS_AS(bounded_tail_bound(10, 11, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bounded_tail_bound(10, 5, 2, 1.0), std::invalid_argument);
    KSetWeights w = random_kset_weights(60, 2, 4);
    BoundedTailCheck c = bounded_tail_check(w, 30, 0.2, 2000, 5);
    CHECK(c.pass);
    CHECK(c.empirical.trials == 2000u);
    double total = 0;
    for (double x : w.w) total += x;
    CHECK(c.ex == doctest::Approx(total * 0.25));
}

TEST_CASE("block sampling corollary") {
    BlockLayout layout;
    const int nu = 100, m_block = 4;
    for (int i = 0; i < nu; ++i) {
        VertexSet b(nu * m_block);
        for (int j = 0; j < m_block; ++j) b.insert(i * m_block + j);
        layout.blocks.push_back(b);
    }
    layout.z = VertexSet(nu * m_block);
    std::vector<std::vector<Vertex>> all;
    for (Vertex a = 0; a < 400; ++a)
        for (Vertex b = 0; b < 400; ++b) all.push_back({a, b});
    BlockSamplingCheck full = block_sampling_check(all, 2, layout, 90, 0.75, 200, 1);
    CHECK(full.in_range);
    CHECK(full.d == 1.0);
    CHECK(full.empirical.hits == 0u);
    CHECK_THROWS_AS(block_sampling_check(all, 2, layout, 50, 0.6, 10, 1), std::invalid_argument);
    BlockSamplingCheck loose = block_sampling_check(all, 2, layout, 50, 0.6, 10, 1, true);
    CHECK_FALSE(loose.in_range);
    CHECK(loose.range_violation.find("16k^2/m") != std::string::npos);
    CHECK(block_sampling_bound(100, 50, 2, 0.6).bound ==
          doctest::Approx(12.0 * std::sqrt(50.0) * std::exp(-0.36 * 50 / (48.0 * 64.0))));
    // sqrt(m) dominates until m passes 24 k^(2k+2) / xi^2
    CHECK(block_sampling_bound(100, 60, 2, 0.6).bound > block_sampling_bound(100, 50, 2, 0.6).bound);
    CHECK(block_sampling_bound(100, 40, 1, 0.9).bound > block_sampling_bound(100, 60, 1, 0.9).bound);
    CHECK(block_sampling_bound(100, 50, 2, 0.7).bound < block_sampling_bound(100, 50, 2, 0.6).bound);
    CHECK_THROWS_AS(block_sampling_bound(10, 50, 2, 0.6), std::invalid_argument);
}
