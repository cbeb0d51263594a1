#include "sigcube/inverted_index.hpp"

namespace sigcube {

InvertedIndex::InvertedIndex(const MultidimGraph& g)
{
    lists_.resize(g.dim_count());
    for (DimIndex d = 0; d < g.dim_count(); ++d) {
        lists_[d].resize(g.value_count(d));
    }
    // Vertices are visited in ascending order, so every list comes out sorted.
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        for (DimIndex d = 0; d < g.dim_count(); ++d) {
            lists_[d][g.value_code(v, d)].push_back(v);
        }
    }
}

InvertedIndex build_inverted_index(const MultidimGraph& g)
{
    return InvertedIndex(g);
}

std::vector<VertexId> posting_ids(const MultidimGraph& g, const InvertedIndex& idx, std::string_view dim,
                                  std::string_view value)
{
    std::vector<VertexId> out;
    auto d = g.find_dim(dim);
    if (!d) {
        return out;
    }
    auto c = g.find_value(*d, value);
    if (!c) {
        return out;
    }
    for (auto v : idx.list(*d, *c)) {
        out.push_back(g.id_of(v));
    }
    return out;
}

} // namespace sigcube
