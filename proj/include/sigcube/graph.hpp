#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sigcube {

using VertexId = std::uint64_t;    // id as it appears in the input files
using VertexIndex = std::uint32_t; // dense position, ascending with VertexId
using DimIndex = std::uint32_t;
using ValueCode = std::uint32_t;   // per-dimension code, ascending with the value string

struct VertexRecord {
    VertexId id = 0;
    std::vector<std::string> values;
};

struct LoadReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_collapsed = 0;
};

/// Undirected simple graph whose vertices carry one string value per
/// dimension. Immutable once built; safe to share across threads.
///
/// Vertices are stored densely in ascending id order, so ascending
/// VertexIndex lists are also ascending VertexId lists. Value strings are
/// dictionary-encoded per dimension with codes assigned in sorted string
/// order.
class MultidimGraph {
public:
    MultidimGraph() = default;

    /// Validates and normalizes raw records. Self-loops are dropped and
    /// duplicate edges collapsed (both counted in `report`); anything else
    /// that violates the graph invariants throws LoadError.
    static MultidimGraph build(std::vector<std::string> dims, std::vector<VertexRecord> vertices,
                               std::vector<std::pair<VertexId, VertexId>> edges,
                               LoadReport* report = nullptr);

    [[nodiscard]] std::span<const std::string> dims() const { return dims_; }
    [[nodiscard]] std::size_t dim_count() const { return dims_.size(); }
    [[nodiscard]] std::size_t vertex_count() const { return ids_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    [[nodiscard]] std::optional<DimIndex> find_dim(std::string_view name) const;

    [[nodiscard]] std::span<const VertexId> vertex_ids() const { return ids_; }
    [[nodiscard]] VertexId id_of(VertexIndex v) const { return ids_[v]; }
    [[nodiscard]] bool contains(VertexId id) const;
    /// Throws LookupError for unknown ids.
    [[nodiscard]] VertexIndex index_of(VertexId id) const;

    [[nodiscard]] ValueCode value_code(VertexIndex v, DimIndex d) const
    {
        return codes_[static_cast<std::size_t>(v) * dims_.size() + d];
    }
    [[nodiscard]] std::span<const ValueCode> value_codes(VertexIndex v) const
    {
        return {codes_.data() + static_cast<std::size_t>(v) * dims_.size(), dims_.size()};
    }
    [[nodiscard]] const std::string& value_name(DimIndex d, ValueCode c) const { return values_[d][c]; }
    [[nodiscard]] std::span<const std::string> value_names(DimIndex d) const { return values_[d]; }
    [[nodiscard]] std::size_t value_count(DimIndex d) const { return values_[d].size(); }
    [[nodiscard]] std::optional<ValueCode> find_value(DimIndex d, std::string_view value) const;

    /// Sorted open neighborhood.
    [[nodiscard]] std::span<const VertexIndex> adjacent(VertexIndex v) const
    {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    [[nodiscard]] std::size_t degree(VertexIndex v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Each undirected edge once as (low, high), sorted.
    [[nodiscard]] std::span<const std::pair<VertexIndex, VertexIndex>> edges() const { return edges_; }

    /// FNV-1a hash of the canonical serialization written by write_graph.
    [[nodiscard]] std::uint64_t fingerprint() const { return fingerprint_; }

    friend bool operator==(const MultidimGraph& a, const MultidimGraph& b);

private:
    std::vector<std::string> dims_;
    std::vector<VertexId> ids_;
    std::vector<std::vector<std::string>> values_;
    std::vector<ValueCode> codes_;
    std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexIndex> adj_;
    std::uint64_t fingerprint_ = 0;
};

/// Reads `id,<dim1>,...` vertex CSV and `src,dst` edge CSV.
MultidimGraph load_graph(const std::filesystem::path& vertex_file,
                         const std::filesystem::path& edge_file, LoadReport* report = nullptr);

/// Stream variant used by load_graph and tests.
MultidimGraph parse_graph(std::istream& vertices, std::istream& edges, LoadReport* report = nullptr);

/// Writes both files deterministically: vertices by id, edges sorted.
void write_graph(const MultidimGraph& g, const std::filesystem::path& vertex_file,
                 const std::filesystem::path& edge_file);
void write_vertices(const MultidimGraph& g, std::ostream& out);
void write_edges(const MultidimGraph& g, std::ostream& out);

/// Open neighborhood N(v) by id, ascending. Throws LookupError.
std::vector<VertexId> neighbors(const MultidimGraph& g, VertexId v);

} // namespace sigcube
