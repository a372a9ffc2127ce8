#include "doctest.h"
#include "hyperham/extremal.hpp"
#include "hyperham/pipeline.hpp"
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

TEST_CASE("config parsing rejects unknown keys and bad values") {
    PipelineConfig c = PipelineConfig::from_json(Json::parse(R"({"alpha":0.2,"M":11,"seed":5,"mode":"desk"})"));
    CHECK(c.alpha == 0.2);
    CHECK(c.M == 11);
    CHECK(c.seed == 5u);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"alhpa":0.2})")), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"M":8})")), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"ell":4})")), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"alpha":"x"})")), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"theta_star":1.5})")), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse("[1]")), ConfigError);
    PipelineConfig d;
    CHECK(PipelineConfig::from_json(d.to_json()).to_json() == d.to_json());
}

TEST_CASE("path cover on complete hosts") {
    Fixture fx(Hypergraph::complete(4, 50));
    PipelineConfig cfg;
    CoverResult all = path_cover(*fx.idx, VertexSet::full(50), cfg);
    CHECK(all.paths.empty());
    CoverResult c = path_cover(*fx.idx, VertexSet(50), cfg);
    CHECK(c.uncovered.size() <= 6);
    CHECK(c.paths.size() == 7);
    VertexSet seen(50);
    for (const auto& p : c.paths) {
        CHECK(p.size() == 7);
        CHECK(oracle::tight_path(fx.h, p));
        CHECK(fx.idx->connectable(p[0], p[1], p[2]));
        CHECK(fx.idx->connectable(p[4], p[5], p[6]));
        for (Vertex v : p) {
            CHECK_FALSE(seen.contains(v));
            seen.insert(v);
        }
    }
    Rng rng(2);
    auto aug = augment_path(*fx.idx, 3, VertexSet::full(50), 11, rng, 100'000);
    REQUIRE(aug);
    CHECK(aug->size() == 11);
    CHECK((*aug)[3] == 3);
    CHECK(oracle::tight_path(fx.h, *aug));
}

TEST_CASE("society statistics") {
    Fixture fx(Hypergraph::complete(4, 36));
    PipelineConfig cfg;
    CoverResult c = path_cover(*fx.idx, VertexSet(36, {0}), cfg);
    BlockPartition bp = make_block_partition(c, VertexSet(36, {0}), 7);
    CHECK(bp.blocks.size() == 5);
    CHECK(bp.leftover.size() < 7);
    SocietyStats empty = society_stats(*fx.idx, 0, bp, 2, 0, 1, cfg);
    CHECK(empty.samples == 0);
    SocietyStats st = society_stats(*fx.idx, 0, bp, 2, 6, 1, cfg);
    CHECK(st.samples == 6);
    CHECK(st.first_failure["i"] == 0);
    int total = st.useful;
    for (const auto& [k, v] : st.first_failure) total += v;
    CHECK(total == st.samples);
    CHECK_THROWS_AS(society_stats(*fx.idx, 0, bp, 6, 1, 1, cfg), std::invalid_argument);
}

TEST_CASE("validate_result") {
    Hypergraph h = Hypergraph::complete(4, 9);
    Sequence c{0, 1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(validate_result(h, c));
    CHECK_FALSE(validate_result(h, Sequence{0, 1, 2, 3, 4, 5, 6, 7}));
    CHECK_FALSE(validate_result(h, Sequence{0, 1, 2, 3, 4, 5, 6, 7, 7}));
    Hypergraph a = construction_a(9).graph;
    CHECK_FALSE(validate_result(a, c));
}

TEST_CASE("end-to-end on complete and extremal hosts") {
    PipelineConfig cfg;
    PipelineResult r = find_hamiltonian_absorption(Hypergraph::complete(4, 60), cfg);
    REQUIRE(r.cycle);
    CHECK(oracle::tight_cycle(Hypergraph::complete(4, 60), *r.cycle));
    CHECK(r.report["outcome"] == "cycle");
    CHECK(r.report["cycle_digest"] == sequence_digest(*r.cycle));
    PipelineResult again = find_hamiltonian_absorption(Hypergraph::complete(4, 60), cfg);
    CHECK(again.report.dump() == r.report.dump());

    PipelineConfig small = cfg;
    small.min_n = 8;
    PipelineResult ext = find_hamiltonian_absorption(construction_a(9).graph, small);
    CHECK_FALSE(ext.cycle);
    CHECK_FALSE(ext.failed_stage.empty());
    PipelineResult tiny = find_hamiltonian_absorption(Hypergraph::complete(4, 9), cfg);
    CHECK(tiny.failed_stage == "precondition");
    PipelineResult three = find_hamiltonian_absorption(Hypergraph::complete(3, 20), cfg);
    CHECK(three.failed_stage == "precondition");
}
