#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigcube/graph.hpp"

namespace sigcube {

/// Synthetic multidimensional graph parameters.
///
/// Dimensions are named d1..dn and take values v0..v{c-1}. When
/// hub_fraction > 0, round(hub_fraction * vertex_count) vertices form a
/// clique and all carry kHubValue in dimension 0.
struct GenParams {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t dim_count = 0;
    std::vector<std::size_t> cardinality; // one per dimension
    std::uint64_t seed = 0;
    double hub_fraction = 0.0;

    /// Same cardinality for every dimension.
    static GenParams uniform(std::size_t vertices, std::size_t edges, std::size_t dims, std::size_t card,
                             std::uint64_t seed, double hub_fraction = 0.0);

    [[nodiscard]] std::size_t hub_size() const;
};

inline constexpr const char* kHubValue = "hub";

/// Deterministic for fixed params; throws ParamError when infeasible.
MultidimGraph generate_synthetic(const GenParams& p);

} // namespace sigcube
