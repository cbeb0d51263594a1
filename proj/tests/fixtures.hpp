#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "sigcube/generator.hpp"
#include "sigcube/graph.hpp"

namespace sigcube::testing {

inline const char* kG0Vertices = "id,Gender,City\n"
                                 "1,M,NY\n"
                                 "2,F,NY\n"
                                 "3,M,NY\n"
                                 "4,F,LA\n"
                                 "5,M,LA\n"
                                 "6,F,LA\n";

inline const char* kG0Edges = "1,2\n1,3\n2,3\n3,4\n4,5\n5,6\n";

inline MultidimGraph g0()
{
    std::istringstream v(kG0Vertices);
    std::istringstream e(kG0Edges);
    return parse_graph(v, e);
}

inline MultidimGraph from_text(const std::string& vertices, const std::string& edges,
                               LoadReport* report = nullptr)
{
    std::istringstream v(vertices);
    std::istringstream e(edges);
    return parse_graph(v, e, report);
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("sigcube-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Random graph for property tests: vertex count in [lo_v, hi_v], edges up
/// to max_edges (capped by C(v,2)), dims in [lo_d, hi_d], per-dimension
/// cardinality in [lo_c, hi_c].
struct CorpusShape {
    std::size_t lo_v = 10;
    std::size_t hi_v = 200;
    std::size_t max_edges = 800;
    std::size_t lo_d = 3;
    std::size_t hi_d = 5;
    std::size_t lo_c = 2;
    std::size_t hi_c = 4;
};

inline GenParams corpus_params(std::uint64_t seed, const CorpusShape& shape = {})
{
    std::mt19937_64 rng(seed * 7919 + 17);
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
    };
    GenParams p;
    p.vertex_count = pick(shape.lo_v, shape.hi_v);
    const std::size_t cap = p.vertex_count * (p.vertex_count - 1) / 2;
    p.edge_count = pick(1, std::min(shape.max_edges, cap));
    p.dim_count = pick(shape.lo_d, shape.hi_d);
    for (std::size_t d = 0; d < p.dim_count; ++d) {
        p.cardinality.push_back(pick(shape.lo_c, shape.hi_c));
    }
    p.seed = seed;
    return p;
}

inline MultidimGraph corpus_graph(std::uint64_t seed, const CorpusShape& shape = {})
{
    return generate_synthetic(corpus_params(seed, shape));
}

} // namespace sigcube::testing
