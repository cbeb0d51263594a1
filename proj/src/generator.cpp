#include "sigcube/generator.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "sigcube/error.hpp"

namespace sigcube {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps
// generated files identical across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t pair_count(std::uint64_t n)
{
    return n < 2 ? 0 : n * (n - 1) / 2;
}

} // namespace

GenParams GenParams::uniform(std::size_t vertices, std::size_t edges, std::size_t dims, std::size_t card,
                             std::uint64_t seed, double hub_fraction)
{
    GenParams p;
    p.vertex_count = vertices;
    p.edge_count = edges;
    p.dim_count = dims;
    p.cardinality.assign(dims, card);
    p.seed = seed;
    p.hub_fraction = hub_fraction;
    return p;
}

std::size_t GenParams::hub_size() const
{
    return static_cast<std::size_t>(std::llround(hub_fraction * static_cast<double>(vertex_count)));
}

MultidimGraph generate_synthetic(const GenParams& p)
{
    if (p.vertex_count == 0 || p.edge_count == 0 || p.dim_count == 0) {
        throw ParamError("vertex, edge and dimension counts must be positive");
    }
    if (p.cardinality.size() != p.dim_count) {
        throw ParamError("need one cardinality per dimension");
    }
    for (auto c : p.cardinality) {
        if (c == 0) {
            throw ParamError("cardinality must be at least 1");
        }
    }
    if (!(p.hub_fraction >= 0.0 && p.hub_fraction <= 1.0)) {
        throw ParamError("hub fraction must lie in [0,1]");
    }
    const std::uint64_t max_edges = pair_count(p.vertex_count);
    if (p.edge_count > max_edges) {
        throw ParamError("edge count " + std::to_string(p.edge_count) + " exceeds C(" +
                         std::to_string(p.vertex_count) + ",2) = " + std::to_string(max_edges));
    }
    const std::size_t hubs = p.hub_size();
    if (pair_count(hubs) > p.edge_count) {
        throw ParamError("hub clique needs " + std::to_string(pair_count(hubs)) +
                         " edges, more than the requested " + std::to_string(p.edge_count));
    }

    std::mt19937_64 rng(p.seed);
    const std::size_t nv = p.vertex_count;

    // Hub membership: the first `hubs` entries of a Fisher-Yates shuffle.
    std::vector<std::size_t> order(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        order[i] = i;
    }
    for (std::size_t i = 0; i < hubs; ++i) {
        auto j = i + draw_below(rng, nv - i);
        std::swap(order[i], order[j]);
    }
    std::vector<bool> is_hub(nv, false);
    for (std::size_t i = 0; i < hubs; ++i) {
        is_hub[order[i]] = true;
    }

    std::vector<std::string> dims;
    for (std::size_t d = 0; d < p.dim_count; ++d) {
        dims.push_back("d" + std::to_string(d + 1));
    }
    std::vector<VertexRecord> vertices(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        vertices[v].id = v + 1;
        for (std::size_t d = 0; d < p.dim_count; ++d) {
            auto code = draw_below(rng, p.cardinality[d]);
            if (d == 0 && is_hub[v]) {
                vertices[v].values.emplace_back(kHubValue);
            } else {
                vertices[v].values.push_back("v" + std::to_string(code));
            }
        }
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(p.edge_count);
    auto add = [&](std::uint64_t a, std::uint64_t b) {
        if (a > b) {
            std::swap(a, b);
        }
        if (seen.insert(a * nv + b).second) {
            edges.emplace_back(a + 1, b + 1);
            return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < hubs; ++i) {
        for (std::size_t j = i + 1; j < hubs; ++j) {
            add(order[i], order[j]);
        }
    }

    const std::uint64_t missing = p.edge_count - edges.size();
    if (missing > 0 && 2 * p.edge_count > max_edges) {
        // Dense request: sample without replacement from the remaining pairs.
        std::vector<std::pair<std::uint64_t, std::uint64_t>> free_pairs;
        for (std::uint64_t a = 0; a < nv; ++a) {
            for (std::uint64_t b = a + 1; b < nv; ++b) {
                if (!seen.count(a * nv + b)) {
                    free_pairs.emplace_back(a, b);
                }
            }
        }
        for (std::uint64_t i = 0; i < missing; ++i) {
            auto j = i + draw_below(rng, free_pairs.size() - i);
            std::swap(free_pairs[i], free_pairs[j]);
            add(free_pairs[i].first, free_pairs[i].second);
        }
    } else {
        while (edges.size() < p.edge_count) {
            auto a = draw_below(rng, nv);
            auto b = draw_below(rng, nv);
            if (a != b) {
                add(a, b);
            }
        }
    }
    return MultidimGraph::build(std::move(dims), std::move(vertices), std::move(edges));
}

} // namespace sigcube
