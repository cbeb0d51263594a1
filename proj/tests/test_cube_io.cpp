#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sigcube/cube.hpp"
#include "sigcube/cube_io.hpp"
#include "sigcube/error.hpp"

using namespace sigcube;
using namespace sigcube::testing;

namespace {

GraphCube build(const MultidimGraph& g, Strategy s, const PrunePolicy& policy, std::size_t max_level = 0,
                unsigned threads = 1)
{
    auto idx = build_inverted_index(g);
    auto table = apply_policy(significance_table(g, idx), policy);
    return compute_cube(g, idx, table, s, max_level == 0 ? g.dim_count() : max_level, BuildOptions{threads});
}

} // namespace

TEST_CASE("G0 cuboid file text")
{
    auto cube = build(g0(), Strategy::steps_up, PrunePolicy::none());
    TempDir dir;
    write_cube(cube, dir.path());
    CHECK(read_text(dir / "Gender.cuboid") == "N\tF\t3\n"
                                              "N\tM\t3\n"
                                              "S\tM\t1\n"
                                              "E\tF\tM\t5\n"
                                              "M\tF\t2,4,6\n"
                                              "M\tM\t1,3,5\n");
    CHECK(read_text(dir / "Gender_City.cuboid") == "N\tF|LA\t2\n"
                                                   "N\tF|NY\t1\n"
                                                   "N\tM|LA\t1\n"
                                                   "N\tM|NY\t2\n"
                                                   "S\tM|NY\t1\n"
                                                   "E\tF|LA\tM|LA\t2\n"
                                                   "E\tF|LA\tM|NY\t1\n"
                                                   "E\tF|NY\tM|NY\t2\n"
                                                   "M\tF|LA\t4,6\n"
                                                   "M\tF|NY\t2\n"
                                                   "M\tM|LA\t5\n"
                                                   "M\tM|NY\t1,3\n");
    auto info = read_meta(dir.path());
    CHECK(info.dims == std::vector<std::string>{"Gender", "City"});
    CHECK(info.max_level == 2);
    CHECK(info.policy == "none");
    CHECK(info.strategy == "steps");
    CHECK(info.members);
    CHECK(info.fingerprint == g0().fingerprint());
}

TEST_CASE("round trip through the directory")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = corpus_graph(seed);
        auto cube = build(g, Strategy::level_by_level, PrunePolicy::none());
        TempDir dir;
        write_cube(cube, dir.path());
        for (const auto& [sig, net] : cube.cuboids) {
            auto rec = to_record(cube, net, true);
            CHECK(read_cuboid(dir.path(), rec.dims) == rec);
            CHECK(parse_cuboid(format_cuboid(rec), rec.dims) == rec);
        }
    }
}

TEST_CASE("members can be omitted")
{
    auto cube = build(g0(), Strategy::steps_up, PrunePolicy::none());
    TempDir dir;
    write_cube(cube, dir.path(), false);
    auto rec = read_cuboid(dir.path(), {"Gender"});
    CHECK(rec.nodes.at("M").count == 3);
    CHECK_FALSE(rec.nodes.at("M").members.has_value());
    CHECK_FALSE(read_meta(dir.path()).members);
}

TEST_CASE("directories are byte-identical across strategies and thread counts")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = corpus_graph(seed);
        TempDir a;
        TempDir b;
        TempDir c;
        write_cube(build(g, Strategy::level_by_level, PrunePolicy::ss_mean()), a.path());
        write_cube(build(g, Strategy::steps_up, PrunePolicy::ss_mean(), 0, 1), b.path());
        write_cube(build(g, Strategy::steps_up, PrunePolicy::ss_mean(), 0, 4), c.path());
        CHECK(same_cuboid_files(a.path(), b.path()));
        CHECK(same_cuboid_files(b.path(), c.path()));
    }
}

TEST_CASE("rewriting a directory drops stale cuboids")
{
    auto g = g0();
    TempDir dir;
    write_cube(build(g, Strategy::steps_up, PrunePolicy::none()), dir.path());
    CHECK(std::filesystem::exists(dir / "Gender_City.cuboid"));
    write_cube(build(g, Strategy::steps_up, PrunePolicy::none(), 1), dir.path());
    CHECK_FALSE(std::filesystem::exists(dir / "Gender_City.cuboid"));
    CHECK_THROWS_AS((void)read_cuboid(dir.path(), {"City", "Gender"}), NotMaterializedError);
}

TEST_CASE("tampered file is rejected with its line number")
{
    auto cube = build(g0(), Strategy::steps_up, PrunePolicy::none());
    TempDir dir;
    write_cube(cube, dir.path());
    auto text = read_text(dir / "Gender.cuboid");
    auto pos = text.find("S\tM\t1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "S\tM\tx");
    write_text(dir / "Gender.cuboid", text);
    CHECK_THROWS_WITH_AS((void)read_cuboid(dir.path(), {"Gender"}),
                         "Gender.cuboid: line 3: invalid weight 'x'", ParseError);

    CHECK_THROWS_AS((void)parse_cuboid("N\tA\t0\n", {"X"}), ParseError);
    CHECK_THROWS_AS((void)parse_cuboid("E\tB\tA\t1\n", {"X"}), ParseError);
    CHECK_THROWS_AS((void)parse_cuboid("N\tA\t1\nM\tA\t1,2\n", {"X"}), ParseError);
    CHECK_THROWS_AS((void)parse_cuboid("Q\n", {"X"}), ParseError);
}

TEST_CASE("lookup errors")
{
    TempDir dir;
    CHECK_THROWS_AS((void)read_meta(dir.path()), NotMaterializedError);
    write_cube(build(g0(), Strategy::steps_up, PrunePolicy::none()), dir.path());
    CHECK_THROWS_WITH_AS((void)read_cuboid(dir.path(), {"Bogus"}), "unknown dimension Bogus", QueryError);
    CHECK(cuboid_path(dir.path(), {"City", "Gender"}) == cuboid_path(dir.path(), {"Gender", "City"}));
    std::filesystem::remove(dir / "City.cuboid");
    CHECK_THROWS_WITH_AS((void)read_cuboid(dir.path(), {"City"}), doctest::Contains("City"),
                         NotMaterializedError);
}
