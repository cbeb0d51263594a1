#include "sigcube/cube.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <thread>
#include <unordered_map>

#include "sigcube/error.hpp"

namespace sigcube {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxDims = 63;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Signature signature_of(Mask m)
{
    Signature sig;
    while (m != 0) {
        sig.push_back(static_cast<DimIndex>(std::countr_zero(m)));
        m &= m - 1;
    }
    return sig;
}

// All k-subsets of {0..n-1}, in ascending signature order.
std::vector<Mask> subsets_of_size(std::size_t n, std::size_t k)
{
    std::vector<Mask> out;
    if (k == 0 || k > n) {
        return out;
    }
    Mask m = (Mask{1} << k) - 1;
    const Mask limit = Mask{1} << n;
    while (m < limit) {
        out.push_back(m);
        // Gosper's hack: next mask with the same popcount.
        Mask c = m & (~m + 1);
        Mask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    std::sort(out.begin(), out.end(),
              [](Mask a, Mask b) { return signature_of(a) < signature_of(b); });
    return out;
}

// Appends a ∩ b to out; returns the number of elements appended.
std::size_t intersect_into(std::span<const VertexIndex> a, std::span<const VertexIndex> b,
                           std::vector<VertexIndex>& out)
{
    const auto before = out.size();
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            out.push_back(*ia);
            ++ia;
            ++ib;
        }
    }
    return out.size() - before;
}

// A cuboid under construction: nodes plus a label index for deduplication.
struct CuboidBuild {
    Signature sig;
    std::vector<AggregateNode> nodes;
    std::unordered_map<std::string, std::size_t> by_label;
};

// Cells produced from one pair of parent cuboids, flattened.
struct PairOutput {
    std::vector<ValueCode> values; // target-level values per cell
    std::vector<std::size_t> bounds{0};
    std::vector<VertexIndex> members;
    std::uint64_t attempts = 0;
};

struct PairJob {
    Mask left;
    Mask right;
    Mask target;
};

// Algorithm body for one pair of parent cuboids: every node of `left` is
// tried against every node of `right`; compatible pairs are intersected.
void combine_cuboids(const CuboidBuild& left, const CuboidBuild& right, const Signature& target,
                     PairOutput& out)
{
    const std::size_t lw = left.sig.size();
    const std::size_t rw = right.sig.size();

    struct Shared {
        std::size_t l;
        std::size_t r;
    };
    std::vector<Shared> shared;
    for (std::size_t i = 0; i < lw; ++i) {
        for (std::size_t j = 0; j < rw; ++j) {
            if (left.sig[i] == right.sig[j]) {
                shared.push_back({i, j});
            }
        }
    }
    // For each target position: index into the left values, or lw + index into the right.
    std::vector<std::size_t> source(target.size());
    for (std::size_t t = 0; t < target.size(); ++t) {
        auto li = std::find(left.sig.begin(), left.sig.end(), target[t]);
        if (li != left.sig.end()) {
            source[t] = static_cast<std::size_t>(li - left.sig.begin());
        } else {
            auto ri = std::find(right.sig.begin(), right.sig.end(), target[t]);
            source[t] = lw + static_cast<std::size_t>(ri - right.sig.begin());
        }
    }

    std::vector<ValueCode> lv;
    lv.reserve(left.nodes.size() * lw);
    for (const auto& n : left.nodes) {
        lv.insert(lv.end(), n.values.begin(), n.values.end());
    }
    std::vector<ValueCode> rv;
    rv.reserve(right.nodes.size() * rw);
    for (const auto& n : right.nodes) {
        rv.insert(rv.end(), n.values.begin(), n.values.end());
    }

    out.attempts += static_cast<std::uint64_t>(left.nodes.size()) * right.nodes.size();
    for (std::size_t i = 0; i < left.nodes.size(); ++i) {
        const ValueCode* a = lv.data() + i * lw;
        for (std::size_t j = 0; j < right.nodes.size(); ++j) {
            const ValueCode* b = rv.data() + j * rw;
            bool agree = true;
            for (const auto& s : shared) {
                if (a[s.l] != b[s.r]) {
                    agree = false;
                    break;
                }
            }
            if (!agree) {
                continue;
            }
            if (intersect_into(left.nodes[i].members, right.nodes[j].members, out.members) == 0) {
                continue;
            }
            for (auto src : source) {
                out.values.push_back(src < lw ? a[src] : b[src - lw]);
            }
            out.bounds.push_back(out.members.size());
        }
    }
}

void encode_key(std::span<const ValueCode> values, std::string& key)
{
    key.resize(values.size() * sizeof(ValueCode));
    std::memcpy(key.data(), values.data(), key.size());
}

// Merges one pair's output into its target; the first copy of a cell wins.
void merge_output(const PairOutput& out, CuboidBuild& target, std::string& key)
{
    const std::size_t width = target.sig.size();
    const std::size_t cells = out.bounds.size() - 1;
    for (std::size_t c = 0; c < cells; ++c) {
        std::span<const ValueCode> values(out.values.data() + c * width, width);
        encode_key(values, key);
        if (target.by_label.count(key) != 0) {
            continue;
        }
        target.by_label.emplace(key, target.nodes.size());
        AggregateNode node;
        node.dims = target.sig;
        node.values.assign(values.begin(), values.end());
        node.members.assign(out.members.begin() + static_cast<std::ptrdiff_t>(out.bounds[c]),
                            out.members.begin() + static_cast<std::ptrdiff_t>(out.bounds[c + 1]));
        target.nodes.push_back(std::move(node));
    }
}

void run_jobs(const std::vector<PairJob>& jobs, std::map<Mask, CuboidBuild>& cuboids, unsigned threads,
              std::uint64_t& attempts)
{
    std::string key;
    const std::size_t workers = std::max(1U, threads);
    std::vector<PairOutput> outputs(workers);
    // Jobs run in chunks of `workers`; merging in job order keeps the result
    // independent of the worker count.
    for (std::size_t begin = 0; begin < jobs.size(); begin += workers) {
        const std::size_t end = std::min(jobs.size(), begin + workers);
        auto work = [&](std::size_t slot) {
            const auto& job = jobs[begin + slot];
            outputs[slot] = PairOutput{};
            combine_cuboids(cuboids.at(job.left), cuboids.at(job.right), cuboids.at(job.target).sig,
                            outputs[slot]);
        };
        if (end - begin == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(end - begin);
            for (std::size_t slot = 0; slot < end - begin; ++slot) {
                pool.emplace_back(work, slot);
            }
        }
        for (std::size_t slot = 0; slot < end - begin; ++slot) {
            attempts += outputs[slot].attempts;
            merge_output(outputs[slot], cuboids.at(jobs[begin + slot].target), key);
        }
    }
}

} // namespace

bool lws_valid(std::span<const DimIndex> dims)
{
    if (dims.empty()) {
        return false;
    }
    for (std::size_t i = 1; i < dims.size(); ++i) {
        if (dims[i - 1] >= dims[i]) {
            return false;
        }
    }
    return true;
}

std::uint64_t AggregateNetwork::total_edge_weight() const
{
    std::uint64_t total = 0;
    for (const auto& [node, w] : self_edges) {
        total += w;
    }
    for (const auto& [pair, w] : cross_edges) {
        total += w;
    }
    return total;
}

std::string to_string(Strategy s)
{
    return s == Strategy::level_by_level ? "level" : "steps";
}

Strategy parse_strategy(std::string_view name)
{
    if (name == "level" || name == "level-by-level") {
        return Strategy::level_by_level;
    }
    if (name == "steps" || name == "steps-up") {
        return Strategy::steps_up;
    }
    throw ParamError("unknown strategy '" + std::string(name) + "' (expected level or steps)");
}

std::string GraphCube::label(const AggregateNode& node) const
{
    std::string out;
    for (std::size_t i = 0; i < node.dims.size(); ++i) {
        if (i > 0) {
            out += '|';
        }
        out += value_names[node.dims[i]][node.values[i]];
    }
    return out;
}

std::string GraphCube::signature_name(const Signature& sig) const
{
    std::string out;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i > 0) {
            out += '_';
        }
        out += dim_names[sig[i]];
    }
    return out;
}

Signature GraphCube::resolve(std::span<const std::string> names) const
{
    Signature sig;
    for (const auto& name : names) {
        auto it = std::find(dim_names.begin(), dim_names.end(), name);
        if (it == dim_names.end()) {
            throw QueryError("unknown dimension " + name);
        }
        sig.push_back(static_cast<DimIndex>(it - dim_names.begin()));
    }
    if (sig.empty()) {
        throw QueryError("empty dimension list");
    }
    std::sort(sig.begin(), sig.end());
    if (std::adjacent_find(sig.begin(), sig.end()) != sig.end()) {
        throw QueryError("repeated dimension in query");
    }
    return sig;
}

std::vector<AggregateNode> level1_nodes(const InvertedIndex& idx, const SignificanceTable& table)
{
    std::vector<AggregateNode> out;
    for (DimIndex d = 0; d < idx.dim_count(); ++d) {
        for (ValueCode c = 0; c < idx.value_count(d); ++c) {
            if (!table.at(d, c).keep) {
                continue;
            }
            auto list = idx.list(d, c);
            out.push_back(AggregateNode{{d}, {c}, {list.begin(), list.end()}});
        }
    }
    return out;
}

std::optional<AggregateNode> combine(const AggregateNode& a, const AggregateNode& b)
{
    if (a.dims == b.dims) {
        return std::nullopt;
    }
    AggregateNode out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.dims.size() || j < b.dims.size()) {
        if (j == b.dims.size() || (i < a.dims.size() && a.dims[i] < b.dims[j])) {
            out.dims.push_back(a.dims[i]);
            out.values.push_back(a.values[i++]);
        } else if (i == a.dims.size() || b.dims[j] < a.dims[i]) {
            out.dims.push_back(b.dims[j]);
            out.values.push_back(b.values[j++]);
        } else {
            if (a.values[i] != b.values[j]) {
                return std::nullopt;
            }
            out.dims.push_back(a.dims[i]);
            out.values.push_back(a.values[i]);
            ++i;
            ++j;
        }
    }
    if (!lws_valid(out.dims)) {
        return std::nullopt;
    }
    if (intersect_into(a.members, b.members, out.members) == 0) {
        return std::nullopt;
    }
    return out;
}

GraphCube empty_cube_for(const MultidimGraph& g)
{
    GraphCube cube;
    cube.dim_names.assign(g.dims().begin(), g.dims().end());
    for (DimIndex d = 0; d < g.dim_count(); ++d) {
        auto names = g.value_names(d);
        cube.value_names.emplace_back(names.begin(), names.end());
    }
    cube.vertex_ids.assign(g.vertex_ids().begin(), g.vertex_ids().end());
    cube.meta.fingerprint = g.fingerprint();
    return cube;
}

GraphCube compute_cube(const MultidimGraph& g, const InvertedIndex& idx, const SignificanceTable& table,
                       Strategy strategy, std::size_t max_level, const BuildOptions& options)
{
    const std::size_t n = g.dim_count();
    if (max_level < 1 || max_level > n) {
        throw ParamError("max level must lie in [1, " + std::to_string(n) + "], got " +
                         std::to_string(max_level));
    }
    if (n > kMaxDims) {
        throw ParamError("cube supports at most " + std::to_string(kMaxDims) + " dimensions");
    }
    if (table.rows.size() != n || idx.dim_count() != n) {
        throw ParamError("index and significance table do not match the graph");
    }

    GraphCube cube = empty_cube_for(g);
    cube.meta.policy = table.policy;
    cube.meta.strategy = strategy;
    cube.meta.max_level = max_level;
    cube.meta.level_millis.assign(max_level, 0.0);
    cube.meta.level_combines.assign(max_level, 0);
    cube.meta.level_precomputed.assign(max_level, false);

    // Per-level registry of cuboids; every signature up to max_level exists,
    // possibly without nodes.
    std::map<Mask, CuboidBuild> cuboids;
    std::vector<std::vector<Mask>> levels(max_level + 1);
    for (std::size_t k = 1; k <= max_level; ++k) {
        levels[k] = subsets_of_size(n, k);
        for (auto m : levels[k]) {
            cuboids[m].sig = signature_of(m);
        }
    }

    auto start = Clock::now();
    for (auto& node : level1_nodes(idx, table)) {
        cuboids.at(Mask{1} << node.dims[0]).nodes.push_back(std::move(node));
    }
    std::vector<bool> complete(max_level + 1, false);
    complete[1] = true;
    cube.meta.level_millis[0] = millis_since(start);

    for (std::size_t level = 1; level < max_level; ++level) {
        start = Clock::now();
        // Target levels for this pass.
        std::vector<bool> wanted(max_level + 1, false);
        bool any = false;
        if (strategy == Strategy::level_by_level) {
            wanted[level + 1] = true;
            any = true;
        } else {
            for (std::size_t k = level + 1; k <= std::min(2 * level, max_level); ++k) {
                if (!complete[k]) {
                    wanted[k] = true;
                    any = true;
                }
            }
        }
        if (!any) {
            cube.meta.level_millis[level - 1] += millis_since(start);
            continue;
        }

        std::vector<PairJob> jobs;
        const auto& here = levels[level];
        for (std::size_t i = 0; i < here.size(); ++i) {
            for (std::size_t j = i + 1; j < here.size(); ++j) {
                const Mask target = here[i] | here[j];
                const auto k = static_cast<std::size_t>(std::popcount(target));
                if (k <= max_level && wanted[k]) {
                    jobs.push_back({here[i], here[j], target});
                }
            }
        }
        std::uint64_t attempts = 0;
        run_jobs(jobs, cuboids, options.threads, attempts);
        cube.meta.level_combines[level - 1] = attempts;
        cube.meta.combines_attempted += attempts;
        for (std::size_t k = level + 1; k <= max_level; ++k) {
            if (wanted[k]) {
                complete[k] = true;
                // Produced ahead of the pass directly below it.
                cube.meta.level_precomputed[k - 1] = k > level + 1;
            }
        }
        cube.meta.level_millis[level - 1] += millis_since(start);
    }

    start = Clock::now();
    for (auto& [mask, build] : cuboids) {
        std::sort(build.nodes.begin(), build.nodes.end(),
                  [](const AggregateNode& a, const AggregateNode& b) { return a.values < b.values; });
        AggregateNetwork net;
        net.signature = build.sig;
        net.nodes = std::move(build.nodes);
        cube.meta.nodes_emitted += net.nodes.size();
        auto sig = net.signature;
        cube.cuboids.emplace(std::move(sig), aggregate_edges(g, std::move(net)));
    }
    cube.meta.edge_millis = millis_since(start);
    return cube;
}

AggregateNetwork aggregate_edges(const MultidimGraph& g, AggregateNetwork net)
{
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> cell(g.vertex_count(), kNone);
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        for (auto v : net.nodes[i].members) {
            cell[v] = i;
        }
    }
    std::vector<std::uint64_t> self(net.nodes.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> cross;
    for (const auto& [u, w] : g.edges()) {
        const auto a = cell[u];
        const auto b = cell[w];
        if (a == kNone || b == kNone) {
            continue;
        }
        if (a == b) {
            ++self[a];
        } else {
            cross.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    net.self_edges.clear();
    for (std::size_t i = 0; i < self.size(); ++i) {
        if (self[i] != 0) {
            net.self_edges.emplace_hint(net.self_edges.end(), i, self[i]);
        }
    }
    std::sort(cross.begin(), cross.end());
    net.cross_edges.clear();
    for (std::size_t i = 0; i < cross.size();) {
        std::size_t j = i;
        while (j < cross.size() && cross[j] == cross[i]) {
            ++j;
        }
        net.cross_edges.emplace_hint(net.cross_edges.end(), cross[i], j - i);
        i = j;
    }
    return net;
}

const AggregateNetwork& query_cuboid(const GraphCube& cube, std::span<const std::string> dims)
{
    auto sig = cube.resolve(dims);
    auto it = cube.cuboids.find(sig);
    if (it == cube.cuboids.end()) {
        throw NotMaterializedError("cuboid " + cube.signature_name(sig) + " is not materialized");
    }
    return it->second;
}

} // namespace sigcube
