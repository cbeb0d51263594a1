#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sigcube/cube.hpp"
#include "sigcube/graph.hpp"
#include "sigcube/measures.hpp"

namespace sigcube {

struct BenchRow {
    Strategy strategy = Strategy::level_by_level;
    PrunePolicy policy = PrunePolicy::none();
    std::size_t max_level = 0;
    double wall_millis = 0.0;
    std::size_t nodes_emitted = 0;
    std::uint64_t combines_attempted = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string environment;
};

struct BenchOptions {
    PrunePolicy policy = PrunePolicy::none();
    std::size_t max_level = 0; // 0: every dimension
    std::size_t repeats = 1;
    unsigned threads = 1;
};

/// Builds the cube with both strategies per repeat and checks the two cubes
/// agree before any timing is kept. Throws VerificationError on disagreement.
BenchReport run_bench(const MultidimGraph& g, const BenchOptions& options);

/// Header: strategy,policy,max_level,wall_millis,nodes_emitted,combines_attempted,environment
void write_bench_csv(const BenchReport& report, std::ostream& out);

std::string machine_descriptor();

} // namespace sigcube
