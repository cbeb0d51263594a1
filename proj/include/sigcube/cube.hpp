#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigcube/graph.hpp"
#include "sigcube/inverted_index.hpp"
#include "sigcube/measures.hpp"

namespace sigcube {

/// Cuboid identity: strictly ascending dimension indices.
using Signature = std::vector<DimIndex>;

/// Light Weight Signature check: non-empty, duplicate-free and strictly
/// ascending in canonical dimension order ("ABC" passes, "ACB" does not).
bool lws_valid(std::span<const DimIndex> dims);

/// One cell of a cuboid.
struct AggregateNode {
    Signature dims;                   // strictly ascending
    std::vector<ValueCode> values;    // aligned with dims
    std::vector<VertexIndex> members; // strictly ascending, never empty

    [[nodiscard]] std::size_t level() const { return dims.size(); }

    friend bool operator==(const AggregateNode&, const AggregateNode&) = default;
};

/// The aggregate network of one cuboid. Nodes are sorted by value tuple;
/// edge maps are keyed by node position and omit zero weights.
struct AggregateNetwork {
    Signature signature;
    std::vector<AggregateNode> nodes;
    std::map<std::size_t, std::uint64_t> self_edges;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cross_edges; // first < second

    [[nodiscard]] std::uint64_t total_edge_weight() const;

    friend bool operator==(const AggregateNetwork&, const AggregateNetwork&) = default;
};

enum class Strategy { level_by_level, steps_up };

/// "level" / "steps".
std::string to_string(Strategy s);
/// Accepts "level", "level-by-level", "steps", "steps-up".
Strategy parse_strategy(std::string_view name);

struct CubeMeta {
    std::uint64_t fingerprint = 0;
    PrunePolicy policy = PrunePolicy::none();
    Strategy strategy = Strategy::level_by_level;
    std::size_t max_level = 0;
    std::vector<double> level_millis;              // [k-1]: time spent on the pass over level k
    std::vector<std::uint64_t> level_combines;     // [k-1]: node pairs tried while processing level k
    std::vector<bool> level_precomputed;           // [k-1]: level k was complete before its own pass
    double edge_millis = 0.0;
    std::uint64_t combines_attempted = 0;
    std::size_t nodes_emitted = 0;
};

/// A materialized lattice plus enough of the source graph to label it.
struct GraphCube {
    std::vector<std::string> dim_names;
    std::vector<std::vector<std::string>> value_names; // [dim][code]
    std::vector<VertexId> vertex_ids;                  // [VertexIndex]
    std::map<Signature, AggregateNetwork> cuboids;
    CubeMeta meta;

    /// Node values joined with '|'.
    [[nodiscard]] std::string label(const AggregateNode& node) const;
    /// Dimension names joined with '_'.
    [[nodiscard]] std::string signature_name(const Signature& sig) const;
    /// Name-to-signature resolution shared by queries and the CLI. Throws
    /// QueryError on unknown or repeated names.
    [[nodiscard]] Signature resolve(std::span<const std::string> names) const;
};

struct BuildOptions {
    unsigned threads = 1; // worker-count hint; output is identical for any value
};

/// One node per kept (dimension, value), in (dimension, value) order.
std::vector<AggregateNode> level1_nodes(const InvertedIndex& idx, const SignificanceTable& table);

/// Intersects two nodes. Empty when the signatures are equal, a shared
/// dimension carries different values, the member intersection is empty or
/// the merged signature is not LWS-valid.
std::optional<AggregateNode> combine(const AggregateNode& a, const AggregateNode& b);

/// Materializes every cuboid with at most max_level dimensions from the kept
/// level-1 nodes, then aggregates edges. Throws ParamError unless
/// 1 <= max_level <= dim count.
GraphCube compute_cube(const MultidimGraph& g, const InvertedIndex& idx, const SignificanceTable& table,
                       Strategy strategy, std::size_t max_level, const BuildOptions& options = {});

/// Fills self/cross edge weights from the graph's edge list.
AggregateNetwork aggregate_edges(const MultidimGraph& g, AggregateNetwork net);

/// Name order is irrelevant. Throws QueryError / NotMaterializedError.
const AggregateNetwork& query_cuboid(const GraphCube& cube, std::span<const std::string> dims);

/// Convenience copy of the graph-side labelling tables into an empty cube.
GraphCube empty_cube_for(const MultidimGraph& g);

} // namespace sigcube
