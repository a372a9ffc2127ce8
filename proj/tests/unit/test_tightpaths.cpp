#include "doctest.h"
#include "hyperham/extremal.hpp"
#include "hyperham/tightpaths.hpp"
#include "oracles.hpp"

using namespace hyperham;

TEST_CASE("validator on complete and damaged hosts") {
    Hypergraph h = Hypergraph::complete(4, 8);
    Sequence c{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(is_valid(c, h, SeqKind::cycle));
    Sequence dup{0, 1, 2, 3, 4, 5, 6, 0};
    Validation v = validate(dup, h, SeqKind::cycle);
    CHECK_FALSE(v.ok);
    CHECK(v.duplicate == 0);
    CHECK(is_valid(dup, h, SeqKind::walk));
    std::vector<Edge> edges;
    for (const auto& e : h.edges())
        if (!(e == Edge{0, 1, 6, 7})) edges.push_back(e);
    Hypergraph g(4, 8, edges);
    Validation w = validate(c, g, SeqKind::cycle);
    CHECK_FALSE(w.ok);
    CHECK(w.failing_window == 6);
    CHECK(is_valid(c, g, SeqKind::path));
}

TEST_CASE("brute force agrees with the naive cycle check") {
    BruteResult r = find_tight_hamiltonian_brute(Hypergraph::complete(4, 9), 1'000'000);
    REQUIRE(r.status == BruteResult::Status::cycle);
    CHECK(oracle::tight_cycle(Hypergraph::complete(4, 9), r.cycle));
    CHECK(find_tight_hamiltonian_brute(construction_a(9).graph, 10'000'000).status == BruteResult::Status::none);
    CHECK(find_tight_hamiltonian_brute(construction_b(9).graph, 10'000'000).status == BruteResult::Status::none);
    for (std::uint64_t s = 0; s < 8; ++s) {
        Hypergraph h = random_hypergraph(9, 4, 0.7, s);
        BruteResult b = find_tight_hamiltonian_brute(h, 10'000'000);
        if (b.status == BruteResult::Status::cycle) CHECK(oracle::tight_cycle(h, b.cycle));
    }
}

TEST_CASE("end tuples and splicing") {
    Hypergraph h = Hypergraph::complete(4, 12);
    Sequence p{0, 1, 2, 3}, q{7, 8, 9, 10}, conn{1, 2, 3, 4, 5, 7, 8, 9};
    auto [s, e] = end_tuples(p, 4);
    CHECK(s == Sequence{0, 1, 2});
    CHECK(e == Sequence{1, 2, 3});
    Sequence joined = splice(h, p, q, conn);
    CHECK(joined == Sequence{0, 1, 2, 3, 4, 5, 7, 8, 9, 10});
    CHECK(oracle::tight_path(h, joined));
    Sequence bad{1, 2, 3, 0, 7, 8, 9};
    CHECK_THROWS_AS(splice(h, p, q, bad), SpliceError);
}

TEST_CASE("template filling and path search give valid paths") {
    Hypergraph h = random_hypergraph(16, 4, 0.8, 5);
    CompletionIndex ci(h);
    CompletionFn comp = [&](std::span<const Vertex> t) { return ci.completions(t); };
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        Sequence seq(9, -1);
        seq[0] = 0;
        seq[4] = 5;
        TemplateFill tf = fill_template(4, comp, seq, VertexSet::full(16), rng, 100'000);
        if (!tf.found) continue;
        CHECK(seq[0] == 0);
        CHECK(seq[4] == 5);
        CHECK(oracle::tight_path(h, seq));
    }
    TuplePredicate ends = [](std::span<const Vertex> t) { return t[0] < t[2]; };
    PathSearch ps = find_path_with_ends(h, ci, VertexSet::full(16), 7, ends, rng, 1'000'000);
    REQUIRE(ps.path);
    CHECK(ps.path->size() == 7);
    CHECK(oracle::tight_path(h, *ps.path));
    CHECK((*ps.path)[0] < (*ps.path)[2]);
    CHECK((*ps.path)[4] < (*ps.path)[6]);
}

TEST_CASE("greedy cover is disjoint") {
    Hypergraph h = Hypergraph::complete(4, 30);
    PathCover pc = greedy_path_cover(h, VertexSet(30, {0, 1}), 7, [](std::span<const Vertex>) { return true; }, 3);
    CHECK(pc.paths.size() == 4);
    VertexSet seen(30);
    for (const auto& p : pc.paths)
        for (Vertex v : p) {
            CHECK_FALSE(seen.contains(v));
            CHECK(v > 1);
            seen.insert(v);
        }
    CHECK(pc.uncovered.size() == 0);
}
