#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "sigcube/cube.hpp"
#include "sigcube/cube_io.hpp"
#include "sigcube/error.hpp"
#include "sigcube/oracle.hpp"

using namespace sigcube;
using namespace sigcube::testing;

TEST_CASE("oracle cuboid on G0")
{
    auto g = g0();
    auto net = oracle::oracle_cuboid(g, {0});
    REQUIRE(net.nodes.size() == 2);
    auto cube = oracle::oracle_cube(g, 2);
    auto rec = to_record(cube, cube.cuboids.at({0}), true);
    CHECK(rec.self_edges == std::map<std::string, std::uint64_t>{{"M", 1}});
    CHECK(rec.cross_edges.at({"F", "M"}) == 5);
    auto gc = to_record(cube, cube.cuboids.at({0, 1}), true);
    CHECK(gc.nodes.at("M|NY").members == std::vector<VertexId>{1, 3});
    CHECK(gc.nodes.at("F|LA").members == std::vector<VertexId>{4, 6});
    CHECK(gc.cross_edges.at({"F|NY", "M|NY"}) == 2);
    CHECK_THROWS_AS((void)oracle::oracle_cuboid(g, {1, 0}), ParamError);
    CHECK_THROWS_AS((void)oracle::oracle_cube(g, 3), ParamError);
}

TEST_CASE("oracle cuboid counts follow the lattice")
{
    for (std::size_t dims : {2, 3, 4}) {
        auto g = generate_synthetic(GenParams::uniform(40, 60, dims, 2, 5));
        CHECK(oracle::oracle_cube(g, dims).cuboids.size() == (std::size_t{1} << dims) - 1);
    }
}

TEST_CASE("compare")
{
    auto g = g0();
    auto cube = oracle::oracle_cube(g, 2);
    CHECK(oracle::compare(cube, cube).empty());

    auto faulty = cube;
    auto& net = faulty.cuboids.at({0, 1});
    net.cross_edges.begin()->second += 1;
    auto diff = oracle::compare(cube, faulty);
    CHECK(diff.size() == 1);
    CHECK(diff.weight_mismatches.size() == 1);

    auto missing = cube;
    missing.cuboids.at({0}).nodes.pop_back();
    missing.cuboids.at({0}) = aggregate_edges(g, missing.cuboids.at({0}));
    CHECK_FALSE(oracle::compare(cube, missing).missing_nodes.empty());

    auto other = oracle::oracle_cube(from_text("id,Gender,City\n1,M,NY\n2,F,LA\n", "1,2\n"), 2);
    CHECK_THROWS_AS((void)oracle::compare(cube, other), VerificationError);
}

TEST_CASE("engine matches oracle on random 4-dim graphs")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto g = corpus_graph(seed, CorpusShape{10, 120, 400, 4, 4, 2, 4});
        auto idx = build_inverted_index(g);
        auto table = significance_table(g, idx);
        table = apply_policy(std::move(table), PrunePolicy::none());
        auto cube = compute_cube(g, idx, table, Strategy::steps_up, 4);
        CHECK(oracle::compare(oracle::oracle_cube(g, 4), cube).empty());
    }
}

TEST_CASE("oracle is invariant under vertex relabeling")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = corpus_graph(seed, CorpusShape{5, 40, 100, 2, 3, 2, 3});
        std::vector<VertexId> ids(g.vertex_ids().begin(), g.vertex_ids().end());
        auto shuffled = ids;
        std::mt19937_64 rng(seed);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::map<VertexId, VertexId> relabel;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            relabel[ids[i]] = shuffled[i] + 1000;
        }
        std::string vtext = "id";
        for (const auto& d : g.dims()) {
            vtext += "," + d;
        }
        vtext += '\n';
        for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
            vtext += std::to_string(relabel[g.id_of(v)]);
            for (DimIndex d = 0; d < g.dim_count(); ++d) {
                vtext += "," + g.value_name(d, g.value_code(v, d));
            }
            vtext += '\n';
        }
        std::string etext;
        for (const auto& [a, b] : g.edges()) {
            etext += std::to_string(relabel[g.id_of(a)]) + "," + std::to_string(relabel[g.id_of(b)]) + "\n";
        }
        auto h = from_text(vtext, etext);
        const auto n = g.dim_count();
        auto cg = oracle::oracle_cube(g, n);
        auto ch = oracle::oracle_cube(h, n);
        for (const auto& [sig, net] : cg.cuboids) {
            auto rg = to_record(cg, net, true);
            auto rh = to_record(ch, ch.cuboids.at(sig), true);
            for (auto& [label, node] : rg.nodes) {
                for (auto& id : *node.members) {
                    id = relabel[id];
                }
                std::sort(node.members->begin(), node.members->end());
            }
            CHECK(rg == rh);
        }
    }
}
