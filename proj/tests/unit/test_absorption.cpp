#include <algorithm>

#include "doctest.h"
#include "hyperham/absorption.hpp"
#include "hyperham/extremal.hpp"
#include "oracles.hpp"

using namespace hyperham;

namespace {

struct Fixture {
    Hypergraph h;
    std::optional<RobustFamily4> f;
    std::optional<TripleIndex> idx;

    explicit Fixture(Hypergraph host) : h(std::move(host)) {
        RobustParams p;
        p.beta = 0.01;
        auto fr = build_family4(h, p);
        REQUIRE(std::holds_alternative<RobustFamily4>(fr));
        f.emplace(std::move(std::get<RobustFamily4>(fr)));
        idx.emplace(*f, 0.01);
    }
};

}  // namespace

TEST_CASE("generic absorber: five paths, swap and end triples") {
    Fixture fx(random_hypergraph(45, 4, 0.93, 17));
    SearchOptions so;
    so.seed = 4;
    AbsorberSearch s = find_absorber(*fx.idx, std::nullopt, VertexSet(45), so);
    REQUIRE(s.absorber);
    const Absorber& ab = *s.absorber;
    CHECK(verify_absorber(*fx.idx, ab).ok);
    auto verts = ab.vertices();
    CHECK(verts.size() == 35);
    std::sort(verts.begin(), verts.end());
    CHECK(std::adjacent_find(verts.begin(), verts.end()) == verts.end());
    const auto paths = ab.paths();
    for (int i = 0; i < 4; ++i) CHECK(paths[i].size() == 7);
    CHECK(paths[4].size() == 7);
    for (const auto& p : paths) CHECK(oracle::tight_path(fx.h, p));
    // find a quadruple outside the absorber that can be swapped in
    VertexSet outside = VertexSet::from_vector(45, ab.vertices()).complement();
    auto cand = outside.members();
    bool swapped = false;
    for (std::size_t a = 0; a + 3 < cand.size() && !swapped; ++a) {
        Quadruple z{cand[a], cand[a + 1], cand[a + 2], cand[a + 3]};
        std::sort(z.begin(), z.end());
        do {
            if (!swap_feasible(fx.h, ab, z)) continue;
            const auto after = ab.paths_after(z);
            for (int i = 0; i < 5; ++i) {
                CHECK(oracle::tight_path(fx.h, after[i]));
                CHECK(after[i].front() == paths[i].front());
                CHECK(after[i].back() == paths[i].back());
                CHECK(std::equal(after[i].begin(), after[i].begin() + 3, paths[i].begin()));
                CHECK(std::equal(after[i].end() - 3, after[i].end(), paths[i].end() - 3));
            }
            CHECK(after[4].size() == 11);
            swapped = true;
            break;
        } while (std::next_permutation(z.begin(), z.end()));
    }
    CHECK(swapped);
}

TEST_CASE("absorbing path absorbs Z of size 0, 4 and 8") {
    Fixture fx(Hypergraph::complete(4, 100));
    VertexSet reservoir(100);
    for (Vertex v = 90; v < 100; ++v) reservoir.insert(v);
    AbsorbingConfig cfg;
    cfg.n_abs = 2;
    cfg.connection_inner = 2;
    auto r = build_absorbing_path(*fx.idx, reservoir, cfg);
    REQUIRE(std::holds_alternative<AbsorbingPath>(r));
    const AbsorbingPath& ap = std::get<AbsorbingPath>(r);
    CHECK(ap.path.size() == 2u * 35 + 9 * 2);
    CHECK(oracle::tight_path(fx.h, ap.path));
    for (Vertex v : ap.path) CHECK_FALSE(reservoir.contains(v));
    for (int size : {0, 4, 8}) {
        VertexSet z(100);
        for (int i = 0; i < size; ++i) z.insert(90 + i);
        AbsorbOutcome out = absorb(fx.h, ap, z, 1);
        CHECK(oracle::tight_path(fx.h, out.path));
        VertexSet want = VertexSet::from_vector(100, ap.path) | z;
        CHECK(VertexSet::from_vector(100, out.path) == want);
        CHECK(out.path.size() == ap.path.size() + size);
        CHECK(std::equal(out.path.begin(), out.path.begin() + 3, ap.path.begin()));
        CHECK(std::equal(out.path.end() - 3, out.path.end(), ap.path.end() - 3));
    }
    VertexSet three(100, {90, 91, 92});
    CHECK_THROWS_AS(absorb(fx.h, ap, three), AbsorbError);
    VertexSet twelve(100);
    for (int i = 0; i < 12; ++i) twelve.insert(80 + i);
    CHECK_THROWS_AS(absorb(fx.h, ap, twelve), AbsorbError);
}

TEST_CASE("joint link paths and elves respect their definitions") {
    Fixture fx(random_hypergraph(40, 4, 0.93, 5));
    SearchOptions so;
    auto paths = joint_link_paths(*fx.idx, 0, 1, 4, VertexSet(40), so);
    CHECK_FALSE(paths.empty());
    for (const auto& b : paths) {
        CHECK(is_link_path(fx.h, 0, b));
        CHECK(is_link_path(fx.h, 1, b));
        CHECK(fx.idx->connectable(b[0], b[1], b[2]));
        CHECK(fx.idx->connectable(b[3], b[4], b[5]));
    }
    auto elves = find_elves(*fx.idx, 2, VertexSet(40), so);
    VertexSet seen(40);
    for (const auto& e : elves) {
        CHECK(oracle::tight_path(fx.h, e.long_path()));
        CHECK(oracle::tight_path(fx.h, e.short_path()));
        for (Vertex v : e.long_path()) {
            CHECK_FALSE(seen.contains(v));
            seen.insert(v);
        }
    }
}
