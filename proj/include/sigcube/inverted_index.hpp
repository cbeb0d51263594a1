#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sigcube/graph.hpp"

namespace sigcube {

/// Per (dimension, value): the ascending list of vertices carrying it.
/// Lists are stored as dense vertex indices (ascending indices are
/// ascending ids); every stored list is non-empty.
class InvertedIndex {
public:
    InvertedIndex() = default;
    explicit InvertedIndex(const MultidimGraph& g);

    [[nodiscard]] std::size_t dim_count() const { return lists_.size(); }
    [[nodiscard]] std::size_t value_count(DimIndex d) const { return lists_[d].size(); }
    [[nodiscard]] std::span<const VertexIndex> list(DimIndex d, ValueCode c) const { return lists_[d][c]; }

    friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

private:
    std::vector<std::vector<std::vector<VertexIndex>>> lists_;
};

InvertedIndex build_inverted_index(const MultidimGraph& g);

/// Vertex ids for (dimension name, value); empty when either is unknown.
std::vector<VertexId> posting_ids(const MultidimGraph& g, const InvertedIndex& idx, std::string_view dim,
                                  std::string_view value);

} // namespace sigcube
