#include "sigcube/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "sigcube/error.hpp"

namespace sigcube {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

std::optional<VertexId> parse_id(std::string_view s)
{
    VertexId v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

bool bad_token(std::string_view s)
{
    return std::any_of(s.begin(), s.end(), [](char c) {
        return c == '\t' || c == '|' || c == '\n' || static_cast<unsigned char>(c) < 0x20;
    });
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h)
{
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

MultidimGraph MultidimGraph::build(std::vector<std::string> dims, std::vector<VertexRecord> vertices,
                                   std::vector<std::pair<VertexId, VertexId>> edges,
                                   LoadReport* report)
{
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    if (dims.empty()) {
        throw LoadError("graph needs at least one dimension");
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& d : dims) {
            if (d.empty() || bad_token(d) || d.find('/') != std::string::npos) {
                throw LoadError("invalid dimension name '" + d + "'");
            }
            if (!seen.insert(d).second) {
                throw LoadError("duplicate dimension name '" + d + "'");
            }
        }
    }

    const std::size_t n = dims.size();
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& rec = vertices[i];
        if (i > 0 && vertices[i - 1].id == rec.id) {
            throw LoadError("duplicate vertex id " + std::to_string(rec.id));
        }
        if (rec.values.size() != n) {
            throw LoadError("vertex " + std::to_string(rec.id) + ": expected " + std::to_string(n) +
                            " attributes, got " + std::to_string(rec.values.size()));
        }
        for (const auto& v : rec.values) {
            if (v.empty() || bad_token(v)) {
                throw LoadError("vertex " + std::to_string(rec.id) + ": invalid attribute value '" + v +
                                "'");
            }
        }
    }
    if (vertices.size() > std::numeric_limits<VertexIndex>::max()) {
        throw LoadError("too many vertices");
    }

    MultidimGraph g;
    g.dims_ = std::move(dims);
    g.ids_.reserve(vertices.size());
    for (const auto& rec : vertices) {
        g.ids_.push_back(rec.id);
    }

    // Dictionary-encode each dimension in sorted string order.
    g.values_.resize(n);
    g.codes_.resize(vertices.size() * n);
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<std::string> dict;
        dict.reserve(vertices.size());
        for (const auto& rec : vertices) {
            dict.push_back(rec.values[d]);
        }
        std::sort(dict.begin(), dict.end());
        dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            auto it = std::lower_bound(dict.begin(), dict.end(), vertices[v].values[d]);
            g.codes_[v * n + d] = static_cast<ValueCode>(it - dict.begin());
        }
        g.values_[d] = std::move(dict);
    }

    g.edges_.reserve(edges.size());
    for (const auto& [src, dst] : edges) {
        if (src == dst) {
            if (!g.contains(src)) {
                throw LoadError("edge " + std::to_string(src) + "," + std::to_string(dst) +
                                ": unknown vertex " + std::to_string(src));
            }
            ++rep.self_loops_dropped;
            continue;
        }
        for (VertexId end : {src, dst}) {
            if (!g.contains(end)) {
                throw LoadError("edge " + std::to_string(src) + "," + std::to_string(dst) +
                                ": unknown vertex " + std::to_string(end));
            }
        }
        auto a = g.index_of(src);
        auto b = g.index_of(dst);
        g.edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    auto last = std::unique(g.edges_.begin(), g.edges_.end());
    rep.duplicate_edges_collapsed += static_cast<std::size_t>(g.edges_.end() - last);
    g.edges_.erase(last, g.edges_.end());

    // CSR adjacency.
    const std::size_t nv = g.ids_.size();
    g.offsets_.assign(nv + 1, 0);
    for (const auto& [a, b] : g.edges_) {
        ++g.offsets_[a + 1];
        ++g.offsets_[b + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adj_.resize(g.edges_.size() * 2);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : g.edges_) {
        g.adj_[cursor[a]++] = b;
        g.adj_[cursor[b]++] = a;
    }
    for (std::size_t v = 0; v < nv; ++v) {
        std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }

    std::ostringstream canon;
    write_vertices(g, canon);
    canon << '\n';
    write_edges(g, canon);
    g.fingerprint_ = fnv1a(canon.str(), 0xcbf29ce484222325ULL);
    return g;
}

std::optional<DimIndex> MultidimGraph::find_dim(std::string_view name) const
{
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        if (dims_[d] == name) {
            return static_cast<DimIndex>(d);
        }
    }
    return std::nullopt;
}

bool MultidimGraph::contains(VertexId id) const
{
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

VertexIndex MultidimGraph::index_of(VertexId id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        throw LookupError("unknown vertex " + std::to_string(id));
    }
    return static_cast<VertexIndex>(it - ids_.begin());
}

std::optional<ValueCode> MultidimGraph::find_value(DimIndex d, std::string_view value) const
{
    const auto& dict = values_.at(d);
    auto it = std::lower_bound(dict.begin(), dict.end(), value);
    if (it == dict.end() || *it != value) {
        return std::nullopt;
    }
    return static_cast<ValueCode>(it - dict.begin());
}

bool operator==(const MultidimGraph& a, const MultidimGraph& b)
{
    return a.dims_ == b.dims_ && a.ids_ == b.ids_ && a.values_ == b.values_ && a.codes_ == b.codes_ &&
           a.edges_ == b.edges_;
}

MultidimGraph parse_graph(std::istream& vertices, std::istream& edges, LoadReport* report)
{
    std::string line;
    if (!std::getline(vertices, line)) {
        throw LoadError("vertex file is empty");
    }
    auto header = split_commas(trim(line));
    if (header.size() < 2 || header[0] != "id") {
        throw LoadError("vertex header must be 'id,<dim1>,...,<dimn>'");
    }
    std::vector<std::string> dims(header.begin() + 1, header.end());
    const std::size_t n = dims.size();

    std::vector<VertexRecord> records;
    std::size_t row = 0;
    while (std::getline(vertices, line)) {
        auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        ++row;
        auto fields = split_commas(body);
        if (fields.size() - 1 != n) {
            throw LoadError("row " + std::to_string(row) + ": expected " + std::to_string(n) +
                            " attributes, got " + std::to_string(fields.size() - 1));
        }
        auto id = parse_id(fields[0]);
        if (!id) {
            throw LoadError("row " + std::to_string(row) + ": invalid vertex id '" +
                            std::string(fields[0]) + "'");
        }
        VertexRecord rec{*id, {}};
        rec.values.reserve(n);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            if (fields[j].empty()) {
                throw LoadError("row " + std::to_string(row) + ": empty value for dimension " +
                                dims[j - 1]);
            }
            rec.values.emplace_back(fields[j]);
        }
        records.push_back(std::move(rec));
    }

    std::vector<std::pair<VertexId, VertexId>> edge_list;
    std::size_t edge_line = 0;
    while (std::getline(edges, line)) {
        ++edge_line;
        auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        auto fields = split_commas(body);
        auto src = fields.size() == 2 ? parse_id(fields[0]) : std::nullopt;
        auto dst = fields.size() == 2 ? parse_id(fields[1]) : std::nullopt;
        if (!src || !dst) {
            throw LoadError("edge line " + std::to_string(edge_line) + ": expected 'src,dst', got '" +
                            std::string(body) + "'");
        }
        edge_list.emplace_back(*src, *dst);
    }
    return MultidimGraph::build(std::move(dims), std::move(records), std::move(edge_list), report);
}

MultidimGraph load_graph(const std::filesystem::path& vertex_file, const std::filesystem::path& edge_file,
                         LoadReport* report)
{
    std::ifstream vin(vertex_file);
    if (!vin) {
        throw LoadError("cannot open vertex file " + vertex_file.string());
    }
    std::ifstream ein(edge_file);
    if (!ein) {
        throw LoadError("cannot open edge file " + edge_file.string());
    }
    return parse_graph(vin, ein, report);
}

void write_vertices(const MultidimGraph& g, std::ostream& out)
{
    out << "id";
    for (const auto& d : g.dims()) {
        out << ',' << d;
    }
    out << '\n';
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        out << g.id_of(v);
        for (DimIndex d = 0; d < g.dim_count(); ++d) {
            out << ',' << g.value_name(d, g.value_code(v, d));
        }
        out << '\n';
    }
}

void write_edges(const MultidimGraph& g, std::ostream& out)
{
    for (const auto& [a, b] : g.edges()) {
        out << g.id_of(a) << ',' << g.id_of(b) << '\n';
    }
}

void write_graph(const MultidimGraph& g, const std::filesystem::path& vertex_file,
                 const std::filesystem::path& edge_file)
{
    std::ofstream vout(vertex_file, std::ios::binary | std::ios::trunc);
    if (!vout) {
        throw Error("cannot write " + vertex_file.string());
    }
    write_vertices(g, vout);
    std::ofstream eout(edge_file, std::ios::binary | std::ios::trunc);
    if (!eout) {
        throw Error("cannot write " + edge_file.string());
    }
    write_edges(g, eout);
    if (!vout.flush() || !eout.flush()) {
        throw Error("write failed for graph files");
    }
}

std::vector<VertexId> neighbors(const MultidimGraph& g, VertexId v)
{
    auto idx = g.index_of(v);
    std::vector<VertexId> out;
    for (auto u : g.adjacent(idx)) {
        out.push_back(g.id_of(u));
    }
    return out;
}

} // namespace sigcube
