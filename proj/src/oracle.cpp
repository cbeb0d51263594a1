#include "sigcube/oracle.hpp"

#include <set>

#include "sigcube/cube_io.hpp"
#include "sigcube/error.hpp"

namespace sigcube::oracle {

namespace {

using Adjacency = std::map<VertexIndex, std::set<VertexIndex>>;

Adjacency adjacency_from_edges(const MultidimGraph& g)
{
    Adjacency adj;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        adj[v];
    }
    for (const auto& [a, b] : g.edges()) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

void enumerate(std::size_t n, std::size_t max_level, std::size_t next, Signature& current,
               std::vector<Signature>& out)
{
    if (!current.empty()) {
        out.push_back(current);
    }
    if (current.size() == max_level) {
        return;
    }
    for (std::size_t d = next; d < n; ++d) {
        current.push_back(static_cast<DimIndex>(d));
        enumerate(n, max_level, d + 1, current, out);
        current.pop_back();
    }
}

Rational choose2(std::size_t k)
{
    return Rational(static_cast<long long>(k) * static_cast<long long>(k - 1)) / 2;
}

ExactScore score_from(const MultidimGraph& g, const Adjacency& adj, VertexIndex v)
{
    const auto& nv = adj.at(v);
    const std::size_t deg = nv.size();
    long long links = 0;
    for (auto a = nv.begin(); a != nv.end(); ++a) {
        for (auto b = std::next(a); b != nv.end(); ++b) {
            if (adj.at(*a).count(*b)) {
                ++links;
            }
        }
    }
    ExactScore s;
    if (deg >= 2) {
        s.cc = Rational(links) / choose2(deg);
    }
    if (deg >= 1) {
        s.density = Rational(static_cast<long long>(deg) + links) / choose2(deg + 1);
        Rational sum;
        for (DimIndex d = 0; d < g.dim_count(); ++d) {
            std::set<std::string> distinct;
            for (auto u : nv) {
                distinct.insert(g.value_name(d, g.value_code(u, d)));
            }
            sum += Rational(static_cast<long long>(distinct.size())) / static_cast<long long>(deg);
        }
        s.alpha = sum / Rational(static_cast<long long>(g.dim_count()));
    }
    s.score = s.alpha * s.cc + s.density;
    return s;
}

void diff_cuboid(const std::string& sig, const CuboidRecord& a, const CuboidRecord& b, CubeDiff& diff)
{
    for (const auto& [label, node] : a.nodes) {
        auto it = b.nodes.find(label);
        if (it == b.nodes.end()) {
            diff.missing_nodes.push_back({sig, label, "count " + std::to_string(node.count)});
        } else if (node != it->second) {
            diff.member_mismatches.push_back(
                {sig, label,
                 "count " + std::to_string(node.count) + " vs " + std::to_string(it->second.count)});
        }
    }
    for (const auto& [label, node] : b.nodes) {
        if (!a.nodes.count(label)) {
            diff.extra_nodes.push_back({sig, label, "count " + std::to_string(node.count)});
        }
    }
    auto weight_of = [](const auto& map, const auto& key) -> std::uint64_t {
        auto it = map.find(key);
        return it == map.end() ? 0 : it->second;
    };
    std::set<std::string> self_keys;
    for (const auto& [k, w] : a.self_edges) {
        self_keys.insert(k);
    }
    for (const auto& [k, w] : b.self_edges) {
        self_keys.insert(k);
    }
    for (const auto& k : self_keys) {
        auto wa = weight_of(a.self_edges, k);
        auto wb = weight_of(b.self_edges, k);
        if (wa != wb) {
            diff.weight_mismatches.push_back(
                {sig, k, "self " + std::to_string(wa) + " vs " + std::to_string(wb)});
        }
    }
    std::set<std::pair<std::string, std::string>> cross_keys;
    for (const auto& [k, w] : a.cross_edges) {
        cross_keys.insert(k);
    }
    for (const auto& [k, w] : b.cross_edges) {
        cross_keys.insert(k);
    }
    for (const auto& k : cross_keys) {
        auto wa = weight_of(a.cross_edges, k);
        auto wb = weight_of(b.cross_edges, k);
        if (wa != wb) {
            diff.weight_mismatches.push_back({sig, k.first + " ~ " + k.second,
                                              "cross " + std::to_string(wa) + " vs " + std::to_string(wb)});
        }
    }
}

} // namespace

AggregateNetwork oracle_cuboid(const MultidimGraph& g, const Signature& dims)
{
    if (!lws_valid(dims) || dims.back() >= g.dim_count()) {
        throw ParamError("invalid cuboid signature");
    }
    std::map<std::vector<ValueCode>, std::vector<VertexIndex>> groups;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        std::vector<ValueCode> key;
        for (auto d : dims) {
            key.push_back(g.value_code(v, d));
        }
        groups[key].push_back(v);
    }
    AggregateNetwork net;
    net.signature = dims;
    std::map<VertexIndex, std::size_t> cell_of;
    for (auto& [values, members] : groups) {
        for (auto v : members) {
            cell_of[v] = net.nodes.size();
        }
        net.nodes.push_back(AggregateNode{dims, values, members});
    }
    for (const auto& [u, w] : g.edges()) {
        auto a = cell_of.at(u);
        auto b = cell_of.at(w);
        if (a == b) {
            ++net.self_edges[a];
        } else {
            ++net.cross_edges[{std::min(a, b), std::max(a, b)}];
        }
    }
    return net;
}

GraphCube oracle_cube(const MultidimGraph& g, std::size_t max_level)
{
    if (max_level < 1 || max_level > g.dim_count()) {
        throw ParamError("max level must lie in [1, " + std::to_string(g.dim_count()) + "]");
    }
    GraphCube cube = empty_cube_for(g);
    cube.meta.policy = PrunePolicy::none();
    cube.meta.max_level = max_level;
    std::vector<Signature> sigs;
    Signature current;
    enumerate(g.dim_count(), max_level, 0, current, sigs);
    for (const auto& sig : sigs) {
        auto net = oracle_cuboid(g, sig);
        cube.meta.nodes_emitted += net.nodes.size();
        cube.cuboids.emplace(sig, std::move(net));
    }
    return cube;
}

CubeDiff compare(const GraphCube& a, const GraphCube& b)
{
    if (a.meta.fingerprint != b.meta.fingerprint) {
        throw VerificationError("cubes come from different graphs; comparison refused");
    }
    CubeDiff diff;
    static const CuboidRecord kEmpty;
    std::set<Signature> sigs;
    for (const auto& [sig, net] : a.cuboids) {
        sigs.insert(sig);
    }
    for (const auto& [sig, net] : b.cuboids) {
        sigs.insert(sig);
    }
    for (const auto& sig : sigs) {
        auto ia = a.cuboids.find(sig);
        auto ib = b.cuboids.find(sig);
        const auto name = a.signature_name(sig);
        if (ia == a.cuboids.end() || ib == b.cuboids.end()) {
            // A whole cuboid on one side only is reported as missing/extra.
            (ia == a.cuboids.end() ? diff.extra_nodes : diff.missing_nodes).push_back({name, "*", "cuboid"});
            continue;
        }
        diff_cuboid(name, to_record(a, ia->second, true), to_record(b, ib->second, true), diff);
    }
    return diff;
}

ExactScore exact_vertex_score(const MultidimGraph& g, VertexId v)
{
    return score_from(g, adjacency_from_edges(g), g.index_of(v));
}

std::map<std::pair<DimIndex, std::string>, Rational> exact_significance(const MultidimGraph& g)
{
    const auto adj = adjacency_from_edges(g);
    std::map<std::pair<DimIndex, std::string>, Rational> out;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const auto s = score_from(g, adj, v);
        for (DimIndex d = 0; d < g.dim_count(); ++d) {
            out[{d, g.value_name(d, g.value_code(v, d))}] += s.score;
        }
    }
    return out;
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

} // namespace sigcube::oracle
