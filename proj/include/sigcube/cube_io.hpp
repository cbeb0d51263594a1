#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigcube/cube.hpp"

namespace sigcube {

/// A cuboid as stored on disk: string labels instead of value codes and
/// original vertex ids instead of dense indices.
struct CuboidRecord {
    struct Node {
        std::size_t count = 0;
        std::optional<std::vector<VertexId>> members; // present only when retained

        friend bool operator==(const Node&, const Node&) = default;
    };

    std::vector<std::string> dims;
    std::map<std::string, Node> nodes; // by label
    std::map<std::string, std::uint64_t> self_edges;
    std::map<std::pair<std::string, std::string>, std::uint64_t> cross_edges; // first < second

    friend bool operator==(const CuboidRecord&, const CuboidRecord&) = default;
};

inline constexpr const char* kCuboidExtension = ".cuboid";
inline constexpr const char* kMetaFile = "meta";

/// Vertex count below which members are retained by default.
inline constexpr std::size_t kDefaultMemberLimit = 1'000'000;

CuboidRecord to_record(const GraphCube& cube, const AggregateNetwork& net, bool keep_members);

/// Cuboid file text: N, S, E and optional M sections, each sorted.
std::string format_cuboid(const CuboidRecord& rec);

/// Inverse of format_cuboid; `dims` is copied into the record. Throws
/// ParseError naming the 1-based line.
CuboidRecord parse_cuboid(const std::string& text, std::vector<std::string> dims);

std::string cuboid_file_name(const std::vector<std::string>& dims);

/// `meta` text: fingerprint, dims, policy, strategy, max level, stats and
/// `level,<k>,<millis>` lines.
std::string format_meta(const GraphCube& cube, bool keep_members);

/// Replaces any previous cube files in `dir`.
void write_cube(const GraphCube& cube, const std::filesystem::path& dir, bool keep_members = true);

/// Fields of a cube directory's meta file needed to read it back.
struct CubeDirInfo {
    std::uint64_t fingerprint = 0;
    std::vector<std::string> dims;
    std::string policy;
    std::string strategy;
    std::size_t max_level = 0;
    bool members = false;
};

CubeDirInfo read_meta(const std::filesystem::path& dir);

/// Canonicalizes the name order and reads that cuboid. Throws QueryError for
/// unknown names and NotMaterializedError for a missing file.
CuboidRecord read_cuboid(const std::filesystem::path& dir, const std::vector<std::string>& dims);

/// Canonical cuboid file path for the given names (same errors as read_cuboid).
std::filesystem::path cuboid_path(const std::filesystem::path& dir, const std::vector<std::string>& dims);

/// True when both directories hold the same cuboid files byte for byte.
/// `meta` is excluded because it records strategy and timings.
bool same_cuboid_files(const std::filesystem::path& a, const std::filesystem::path& b);

} // namespace sigcube
