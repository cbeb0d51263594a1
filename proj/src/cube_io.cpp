#include "sigcube/cube_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sigcube/error.hpp"

namespace sigcube {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
std::optional<T> parse_uint(std::string_view s)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())) || !out.flush()) {
        throw Error("cannot write " + p.string());
    }
}

std::vector<std::string> cuboid_files(const fs::path& dir)
{
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == kCuboidExtension) {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

void append_sorted(std::string& out, std::vector<std::string>& lines)
{
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
}

} // namespace

CuboidRecord to_record(const GraphCube& cube, const AggregateNetwork& net, bool keep_members)
{
    CuboidRecord rec;
    for (auto d : net.signature) {
        rec.dims.push_back(cube.dim_names[d]);
    }
    std::vector<std::string> labels;
    labels.reserve(net.nodes.size());
    for (const auto& node : net.nodes) {
        labels.push_back(cube.label(node));
        CuboidRecord::Node rn;
        rn.count = node.members.size();
        if (keep_members) {
            std::vector<VertexId> ids;
            ids.reserve(node.members.size());
            for (auto v : node.members) {
                ids.push_back(cube.vertex_ids[v]);
            }
            rn.members = std::move(ids);
        }
        rec.nodes.emplace(labels.back(), std::move(rn));
    }
    for (const auto& [i, w] : net.self_edges) {
        rec.self_edges.emplace(labels[i], w);
    }
    for (const auto& [pair, w] : net.cross_edges) {
        auto a = labels[pair.first];
        auto b = labels[pair.second];
        if (b < a) {
            std::swap(a, b);
        }
        rec.cross_edges.emplace(std::make_pair(std::move(a), std::move(b)), w);
    }
    return rec;
}

std::string format_cuboid(const CuboidRecord& rec)
{
    std::string out;
    std::vector<std::string> lines;
    for (const auto& [label, node] : rec.nodes) {
        lines.push_back("N\t" + label + "\t" + std::to_string(node.count));
    }
    append_sorted(out, lines);
    lines.clear();
    for (const auto& [label, w] : rec.self_edges) {
        lines.push_back("S\t" + label + "\t" + std::to_string(w));
    }
    append_sorted(out, lines);
    lines.clear();
    for (const auto& [pair, w] : rec.cross_edges) {
        lines.push_back("E\t" + pair.first + "\t" + pair.second + "\t" + std::to_string(w));
    }
    append_sorted(out, lines);
    lines.clear();
    for (const auto& [label, node] : rec.nodes) {
        if (!node.members) {
            continue;
        }
        std::string line = "M\t" + label + "\t";
        for (std::size_t i = 0; i < node.members->size(); ++i) {
            if (i > 0) {
                line += ',';
            }
            line += std::to_string((*node.members)[i]);
        }
        lines.push_back(std::move(line));
    }
    append_sorted(out, lines);
    return out;
}

CuboidRecord parse_cuboid(const std::string& text, std::vector<std::string> dims)
{
    CuboidRecord rec;
    rec.dims = std::move(dims);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string_view line(text.data() + start, end - start);
        start = end + 1;
        ++line_no;
        auto fail = [&](const std::string& what) {
            return ParseError("line " + std::to_string(line_no) + ": " + what);
        };
        if (line.empty()) {
            throw fail("empty line");
        }
        auto f = split(line, '\t');
        const auto kind = f[0];
        if (kind == "N" && f.size() == 3) {
            auto count = parse_uint<std::size_t>(f[2]);
            if (!count || *count == 0) {
                throw fail("invalid member count '" + std::string(f[2]) + "'");
            }
            if (!rec.nodes.emplace(std::string(f[1]), CuboidRecord::Node{*count, std::nullopt}).second) {
                throw fail("duplicate node '" + std::string(f[1]) + "'");
            }
        } else if (kind == "S" && f.size() == 3) {
            auto w = parse_uint<std::uint64_t>(f[2]);
            if (!w) {
                throw fail("invalid weight '" + std::string(f[2]) + "'");
            }
            if (!rec.nodes.count(std::string(f[1]))) {
                throw fail("self edge on unknown node '" + std::string(f[1]) + "'");
            }
            rec.self_edges[std::string(f[1])] = *w;
        } else if (kind == "E" && f.size() == 4) {
            auto w = parse_uint<std::uint64_t>(f[3]);
            if (!w) {
                throw fail("invalid weight '" + std::string(f[3]) + "'");
            }
            std::string a(f[1]);
            std::string b(f[2]);
            if (!(a < b)) {
                throw fail("cross edge labels out of order");
            }
            if (!rec.nodes.count(a) || !rec.nodes.count(b)) {
                throw fail("cross edge on unknown node");
            }
            rec.cross_edges[{std::move(a), std::move(b)}] = *w;
        } else if (kind == "M" && f.size() == 3) {
            auto it = rec.nodes.find(std::string(f[1]));
            if (it == rec.nodes.end()) {
                throw fail("members for unknown node '" + std::string(f[1]) + "'");
            }
            std::vector<VertexId> ids;
            for (auto tok : split(f[2], ',')) {
                auto id = parse_uint<VertexId>(tok);
                if (!id) {
                    throw fail("invalid vertex id '" + std::string(tok) + "'");
                }
                ids.push_back(*id);
            }
            if (ids.size() != it->second.count) {
                throw fail("member list length does not match node count");
            }
            it->second.members = std::move(ids);
        } else {
            throw fail("unrecognized record '" + std::string(line) + "'");
        }
    }
    return rec;
}

std::string cuboid_file_name(const std::vector<std::string>& dims)
{
    std::string name;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i > 0) {
            name += '_';
        }
        name += dims[i];
    }
    return name + kCuboidExtension;
}

std::string format_meta(const GraphCube& cube, bool keep_members)
{
    std::ostringstream out;
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(cube.meta.fingerprint));
    out << "fingerprint," << hex << '\n';
    out << "dims";
    for (const auto& d : cube.dim_names) {
        out << ',' << d;
    }
    out << '\n';
    out << "policy," << cube.meta.policy.to_string() << '\n';
    out << "strategy," << to_string(cube.meta.strategy) << '\n';
    out << "max_level," << cube.meta.max_level << '\n';
    out << "members," << (keep_members ? "true" : "false") << '\n';
    out << "nodes_emitted," << cube.meta.nodes_emitted << '\n';
    out << "combines_attempted," << cube.meta.combines_attempted << '\n';
    char ms[64];
    for (std::size_t k = 0; k < cube.meta.level_millis.size(); ++k) {
        std::snprintf(ms, sizeof ms, "%.3f", cube.meta.level_millis[k]);
        out << "level," << k + 1 << ',' << ms << '\n';
    }
    std::snprintf(ms, sizeof ms, "%.3f", cube.meta.edge_millis);
    out << "edges," << ms << '\n';
    return out.str();
}

void write_cube(const GraphCube& cube, const fs::path& dir, bool keep_members)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error("cannot create cube directory " + dir.string());
    }
    for (const auto& name : cuboid_files(dir)) {
        fs::remove(dir / name);
    }
    for (const auto& [sig, net] : cube.cuboids) {
        auto rec = to_record(cube, net, keep_members);
        write_file(dir / cuboid_file_name(rec.dims), format_cuboid(rec));
    }
    write_file(dir / kMetaFile, format_meta(cube, keep_members));
}

CubeDirInfo read_meta(const fs::path& dir)
{
    const auto path = dir / kMetaFile;
    if (!fs::exists(path)) {
        throw NotMaterializedError("no cube in " + dir.string() + " (missing meta)");
    }
    const auto text = read_file(path);
    CubeDirInfo info;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = split(line, ',');
        auto fail = [&] { return ParseError("meta line " + std::to_string(line_no) + ": malformed"); };
        if (f[0] == "fingerprint" && f.size() == 2) {
            auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), info.fingerprint, 16);
            if (ec != std::errc{} || ptr != f[1].data() + f[1].size()) {
                throw fail();
            }
        } else if (f[0] == "dims") {
            info.dims.assign(f.begin() + 1, f.end());
        } else if (f[0] == "policy" && f.size() == 2) {
            info.policy = f[1];
        } else if (f[0] == "strategy" && f.size() == 2) {
            info.strategy = f[1];
        } else if (f[0] == "max_level" && f.size() == 2) {
            auto v = parse_uint<std::size_t>(f[1]);
            if (!v) {
                throw fail();
            }
            info.max_level = *v;
        } else if (f[0] == "members" && f.size() == 2) {
            info.members = f[1] == "true";
        }
    }
    if (info.dims.empty()) {
        throw ParseError("meta has no dims line");
    }
    return info;
}

fs::path cuboid_path(const fs::path& dir, const std::vector<std::string>& dims)
{
    auto info = read_meta(dir);
    GraphCube names;
    names.dim_names = info.dims;
    auto sig = names.resolve(dims);
    std::vector<std::string> canonical;
    for (auto d : sig) {
        canonical.push_back(info.dims[d]);
    }
    auto path = dir / cuboid_file_name(canonical);
    if (sig.size() > info.max_level || !fs::exists(path)) {
        throw NotMaterializedError("cuboid " + names.signature_name(sig) + " is not materialized");
    }
    return path;
}

CuboidRecord read_cuboid(const fs::path& dir, const std::vector<std::string>& dims)
{
    auto path = cuboid_path(dir, dims);
    auto info = read_meta(dir);
    GraphCube names;
    names.dim_names = info.dims;
    std::vector<std::string> canonical;
    for (auto d : names.resolve(dims)) {
        canonical.push_back(info.dims[d]);
    }
    try {
        return parse_cuboid(read_file(path), std::move(canonical));
    } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ": " + e.what());
    }
}

bool same_cuboid_files(const fs::path& a, const fs::path& b)
{
    auto na = cuboid_files(a);
    if (na != cuboid_files(b)) {
        return false;
    }
    return std::all_of(na.begin(), na.end(),
                       [&](const std::string& name) { return read_file(a / name) == read_file(b / name); });
}

} // namespace sigcube
