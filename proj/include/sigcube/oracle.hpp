#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sigcube/cube.hpp"
#include "sigcube/graph.hpp"

namespace sigcube::oracle {

// Brute-force reference computations. Everything here reads only the vertex
// table and the edge list of a graph; nothing goes through the inverted index
// or the cube engine.

using Rational = boost::multiprecision::cpp_rational;

/// Group vertices by their value tuple on `dims` and classify every edge by
/// its endpoint cells. No pruning. Throws ParamError for an invalid signature.
AggregateNetwork oracle_cuboid(const MultidimGraph& g, const Signature& dims);

/// oracle_cuboid for every signature with at most max_level dimensions.
GraphCube oracle_cube(const MultidimGraph& g, std::size_t max_level);

struct DiffEntry {
    std::string signature;
    std::string label;
    std::string detail;
};

struct CubeDiff {
    std::vector<DiffEntry> missing_nodes; // in the first cube only
    std::vector<DiffEntry> extra_nodes;   // in the second cube only
    std::vector<DiffEntry> member_mismatches;
    std::vector<DiffEntry> weight_mismatches;

    [[nodiscard]] bool empty() const
    {
        return missing_nodes.empty() && extra_nodes.empty() && member_mismatches.empty() &&
               weight_mismatches.empty();
    }
    [[nodiscard]] std::size_t size() const
    {
        return missing_nodes.size() + extra_nodes.size() + member_mismatches.size() +
               weight_mismatches.size();
    }
};

/// Structural diff by label. Throws VerificationError when the cubes were
/// built from different graphs.
CubeDiff compare(const GraphCube& a, const GraphCube& b);

/// Exact per-vertex components.
struct ExactScore {
    Rational alpha;
    Rational cc;
    Rational density;
    Rational score;
};

ExactScore exact_vertex_score(const MultidimGraph& g, VertexId v);

/// Exact significance per (dimension index, value string).
std::map<std::pair<DimIndex, std::string>, Rational> exact_significance(const MultidimGraph& g);

double to_double(const Rational& r);

} // namespace sigcube::oracle
