#include <cmath>

#include "doctest.h"
#include "hyperham/robust.hpp"
#include "hyperham/rng.hpp"
#include "oracles.hpp"

using namespace hyperham;

namespace {
Graph random_graph(int n, double p, Rng& rng) {
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (rng.bernoulli(p)) g.add_edge(a, b);
    return g;
}
}  // namespace

TEST_CASE("robust constants follow the closed forms") {
    // mu' = 1/q exactly representable cases: ell = 8 q^2 + 3
    for (long q : {80L, 100L, 128L}) {
        const double mu_prime = 1.0 / q;
        RobustConstants c = robust_constants(0.9, 4.0 * mu_prime);
        CHECK(c.mu_prime == doctest::Approx(mu_prime));
        CHECK(c.ell == 8 * q * q + 3);
        CHECK(c.beta.log_value == doctest::Approx(6.0 * c.ell * std::log(mu_prime / 2.0) - std::log(72.0)));
    }
    RobustConstants c = robust_constants(0.1, 0.025);
    CHECK(c.mu_prime == doctest::Approx(0.1 / 72.0));
    CHECK(c.ell % 2 == 1);
    CHECK(c.ell > 8.0 / (c.mu_prime * c.mu_prime) + 1.0);
    CHECK(c.ell - 2 <= 8.0 / (c.mu_prime * c.mu_prime) + 1.0);
    CHECK(c.beta.value == 0.0);  // underflows; log form carries it
    CHECK(std::isfinite(c.beta.log_value));
    CHECK_THROWS_AS(robust_constants(0.0, 0.1), std::invalid_argument);
}

TEST_CASE("path counts match sequence enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        Graph g = random_graph(n, rng.uniform(), rng);
        const int ell = 1 + static_cast<int>(rng.below(4));
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = x + 1; y < n; ++y) CHECK(count_paths_fixed_length(g, x, y, ell) == oracle::paths(g, x, y, ell));
    }
    Graph k(5);
    CHECK_THROWS_AS(count_paths_fixed_length(k, 0, 1, 9), std::invalid_argument);
    CHECK_THROWS_AS(count_paths_fixed_length(k, 0, 0, 2), std::invalid_argument);
}

TEST_CASE("robustness check reports the true minimum") {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(9));
        Graph g = random_graph(n, 0.3 + 0.7 * rng.uniform(), rng);
        VertexSet u = VertexSet::full(n);
        u.erase(static_cast<Vertex>(rng.below(n)));
        Graph r = g.induced(u);
        for (int ell : {2, 3, 4}) {
            RobustCheck rc = is_robust(r, 0.0, ell);
            std::uint64_t worst = UINT64_MAX;
            auto vs = r.vertices().members();
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j)
                    worst = std::min(worst, oracle::paths(r, vs[i], vs[j], ell));
            CHECK(rc.worst_count == worst);
        }
    }
    Graph complete(6);
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = a + 1; b < 6; ++b) complete.add_edge(a, b);
    RobustCheck rc = is_robust(complete, 0.1, 3);
    CHECK(rc.worst_count == 12);  // 4 * 3
    CHECK(rc.robust);
    CHECK_FALSE(is_robust(complete, 0.4, 3).robust);  // 12 < 0.4 * 36
}

TEST_CASE("walks of length three against the Blakley-Roy bound") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(11));
        Graph g = random_graph(n, rng.uniform(), rng);
        double walks = 0;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                for (Vertex c = 0; c < n; ++c)
                    for (Vertex d = 0; d < n; ++d) walks += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d);
        BlakleyRoy br = blakley_roy_gap(g);
        CHECK(br.walks == walks);
        CHECK(br.gap >= -1e-9);
    }
    for (int n = 2; n < 10; ++n) {
        Graph k(n);
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) k.add_edge(a, b);
        BlakleyRoy br = blakley_roy_gap(k);
        CHECK(br.walks == static_cast<double>(n) * (n - 1) * (n - 1) * (n - 1));
        CHECK(br.gap == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("extraction certifies all clauses on dense graphs") {
    Rng rng(14);
    Graph g = random_graph(30, 0.95, rng);
    RobustParams p;
    p.beta = 0.01;
    ExtractionResult res = extract_robust_subgraph(g, p);
    REQUIRE(res.certificate);
    const RobustCertificate& c = *res.certificate;
    CHECK(c.all_hold());
    CHECK(3.0 * c.u.size() >= (2.0 + 1.5 * p.alpha) * 30 - 1e-9);
    CHECK(is_robust(g.induced(c.u), p.beta, p.ell).robust);
    CHECK(c.cut == g.cut(c.u, g.vertices() - c.u));
    Graph empty(10);
    CHECK_FALSE(extract_robust_subgraph(empty, p).certificate);
}
