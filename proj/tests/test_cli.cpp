#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "../tools/cli.hpp"
#include "fixtures.hpp"
#include "sigcube/cube_io.hpp"

using namespace sigcube;
using namespace sigcube::testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct G0Files {
    TempDir dir;
    std::string v = (dir / "v.csv").string();
    std::string e = (dir / "e.csv").string();
    G0Files()
    {
        write_text(v, kG0Vertices);
        write_text(e, kG0Edges);
    }
};

} // namespace

TEST_CASE("gen")
{
    TempDir a;
    TempDir b;
    std::vector<std::string> args{"gen", "--vertices", "1000", "--edges", "5000", "--dims", "6",
                                  "--card", "10", "--seed", "7", "--out"};
    auto ra = args;
    ra.push_back(a.path().string());
    auto rb = args;
    rb.push_back(b.path().string());
    REQUIRE(run(ra).code == 0);
    REQUIRE(run(rb).code == 0);
    CHECK(read_text(a / "vertices.csv") == read_text(b / "vertices.csv"));
    CHECK(read_text(a / "edges.csv") == read_text(b / "edges.csv"));

    auto bad = run({"gen", "--vertices", "10", "--edges", "100", "--out", a.path().string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error") != std::string::npos);

    auto hub = run({"gen", "--vertices", "1000", "--edges", "5000", "--dims", "6", "--card", "10", "--hub",
                    "0.05", "--out", a.path().string()});
    CHECK(hub.code == 0);
    CHECK(hub.out.find("hub 50 vertices (5.0% of vertices)") != std::string::npos);
}

TEST_CASE("ss")
{
    G0Files f;
    auto r = run({"ss", "--vertices", f.v, "--edges", f.e});
    CHECK(r.code == 0);
    CHECK(r.out == "dimension,value,ss,support,keep\n"
                   "Gender,F,3.16666666667,3,false\n"
                   "Gender,M,3.30555555556,3,true\n"
                   "City,LA,2.33333333333,3,false\n"
                   "City,NY,4.13888888889,3,true\n");
    auto support = run({"ss", "--vertices", f.v, "--edges", f.e, "--policy", "support", "--min-support", "3"});
    CHECK(support.code == 0);
    CHECK(support.out.find("false") == std::string::npos);

    auto missing = run({"ss", "--vertices", f.v, "--edges", (f.dir / "nope.csv").string()});
    CHECK(missing.code == 2);
    CHECK_FALSE(missing.err.empty());

    auto out_file = (f.dir / "ss.csv").string();
    CHECK(run({"ss", "--vertices", f.v, "--edges", f.e, "--out", out_file}).code == 0);
    CHECK(read_text(out_file) == r.out);
}

TEST_CASE("cube")
{
    G0Files f;
    TempDir steps;
    TempDir level;
    auto rs = run({"cube", "--vertices", f.v, "--edges", f.e, "--out", steps.path().string(), "--strategy",
                   "steps", "--policy", "none"});
    auto rl = run({"cube", "--vertices", f.v, "--edges", f.e, "--out", level.path().string(), "--strategy",
                   "level", "--policy", "none"});
    CHECK(rs.code == 0);
    CHECK(rl.code == 0);
    CHECK(rs.out.find("level 1: 4 nodes") != std::string::npos);
    CHECK(rs.out.find("level 2: 4 nodes") != std::string::npos);
    CHECK(same_cuboid_files(steps.path(), level.path()));

    TempDir pruned;
    CHECK(run({"cube", "--vertices", f.v, "--edges", f.e, "--out", pruned.path().string(), "--policy",
               "ss-mean"})
              .code == 0);
    for (const auto& entry : std::filesystem::directory_iterator(pruned.path())) {
        if (entry.path().extension() != kCuboidExtension) {
            continue;
        }
        const auto text = read_text(entry.path());
        const bool has_gender = entry.path().filename().string().rfind("Gender", 0) == 0;
        if (has_gender) {
            CHECK(text.find("\tF") == std::string::npos);
        }
    }
    CHECK(read_meta(pruned.path()).policy == "ss-mean");

    auto zero = run({"cube", "--vertices", f.v, "--edges", f.e, "--out", pruned.path().string(),
                     "--max-level", "0"});
    CHECK(zero.code == 1);
    auto strategy = run({"cube", "--vertices", f.v, "--edges", f.e, "--out", pruned.path().string(),
                         "--strategy", "sideways"});
    CHECK(strategy.code == 1);

    TempDir no_members;
    CHECK(run({"cube", "--vertices", f.v, "--edges", f.e, "--out", no_members.path().string(),
               "--no-keep-members"})
              .code == 0);
    CHECK_FALSE(read_meta(no_members.path()).members);
}

TEST_CASE("query")
{
    G0Files f;
    TempDir cube;
    REQUIRE(run({"cube", "--vertices", f.v, "--edges", f.e, "--out", cube.path().string(), "--policy",
                 "none"})
                .code == 0);
    auto cg = run({"query", "--cube", cube.path().string(), "--dims", "City,Gender"});
    auto gc = run({"query", "--cube", cube.path().string(), "--dims", "Gender,City"});
    CHECK(cg.code == 0);
    CHECK(cg.out == gc.out);
    CHECK(cg.out == read_text(cube / "Gender_City.cuboid"));

    auto gender = run({"query", "--cube", cube.path().string(), "--dims", "Gender"});
    CHECK(gender.out.find("S\tM\t1\n") != std::string::npos);
    CHECK(gender.out.find("E\tF\tM\t5\n") != std::string::npos);

    auto bogus = run({"query", "--cube", cube.path().string(), "--dims", "Bogus"});
    CHECK(bogus.code == 3);
    CHECK(bogus.err.find("unknown dimension Bogus") != std::string::npos);

    TempDir low;
    REQUIRE(run({"cube", "--vertices", f.v, "--edges", f.e, "--out", low.path().string(), "--max-level", "1"})
                .code == 0);
    auto miss = run({"query", "--cube", low.path().string(), "--dims", "Gender,City"});
    CHECK(miss.code == 3);
    CHECK(miss.err.find("Gender_City") != std::string::npos);
}

TEST_CASE("bench")
{
    G0Files f;
    auto r = run({"bench", "--vertices", f.v, "--edges", f.e, "--repeats", "3"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "strategy,policy,max_level,wall_millis,nodes_emitted,combines_attempted,environment");
    std::size_t rows = 0;
    std::map<std::string, std::set<std::string>> combines;
    while (std::getline(lines, line)) {
        ++rows;
        std::vector<std::string> fields;
        std::istringstream fs(line);
        std::string field;
        while (std::getline(fs, field, ',')) {
            fields.push_back(field);
        }
        REQUIRE(fields.size() >= 7);
        CHECK(std::stod(fields[3]) > 0.0);
        combines["all"].insert(fields[5]);
    }
    CHECK(rows == 6);
    // Two dimensions: nothing to skip, so both strategies try the same pairs.
    CHECK(combines["all"].size() == 1);

    CHECK(run({"bench", "--vertices", f.v, "--edges", f.e, "--repeats", "0"}).code == 1);
}

TEST_CASE("usage errors and help")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"cube", "--help"}).code == 0);
    CHECK(run({"ss", "--vertices", "x.csv"}).code == 1);
}
