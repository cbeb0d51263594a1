#include "sigcube/measures.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "sigcube/error.hpp"

namespace sigcube {

namespace {

// Number of edges among the open neighborhood of v.
std::size_t neighbor_links(const MultidimGraph& g, VertexIndex v)
{
    std::size_t links = 0;
    auto nv = g.adjacent(v);
    for (auto u : nv) {
        // Count link u-w once, from its smaller end: |N(u) ∩ N(v)| over w > u.
        auto nu = g.adjacent(u);
        auto it_u = std::upper_bound(nu.begin(), nu.end(), u);
        auto it_v = std::upper_bound(nv.begin(), nv.end(), u);
        while (it_u != nu.end() && it_v != nv.end()) {
            if (*it_u < *it_v) {
                ++it_u;
            } else if (*it_v < *it_u) {
                ++it_v;
            } else {
                ++links;
                ++it_u;
                ++it_v;
            }
        }
    }
    return links;
}

double pairs(std::size_t k)
{
    return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
}

double cc_of(const MultidimGraph& g, VertexIndex v, std::size_t links)
{
    const auto deg = g.degree(v);
    return deg < 2 ? 0.0 : static_cast<double>(links) / pairs(deg);
}

double density_of(const MultidimGraph& g, VertexIndex v, std::size_t links)
{
    // N[v] has deg+1 vertices and deg + links induced edges.
    const auto deg = g.degree(v);
    return deg == 0 ? 0.0 : static_cast<double>(deg + links) / pairs(deg + 1);
}

double alpha_of(const MultidimGraph& g, VertexIndex v)
{
    auto nv = g.adjacent(v);
    if (nv.empty()) {
        return 0.0;
    }
    std::vector<ValueCode> seen;
    seen.reserve(nv.size());
    double total = 0.0;
    for (DimIndex d = 0; d < g.dim_count(); ++d) {
        seen.clear();
        for (auto u : nv) {
            seen.push_back(g.value_code(u, d));
        }
        std::sort(seen.begin(), seen.end());
        auto distinct = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
        total += static_cast<double>(distinct) / static_cast<double>(nv.size());
    }
    return total / static_cast<double>(g.dim_count());
}

VertexScore score_of(const MultidimGraph& g, VertexIndex v)
{
    const auto links = neighbor_links(g, v);
    VertexScore s;
    s.alpha = alpha_of(g, v);
    s.cc = cc_of(g, v, links);
    s.density = density_of(g, v, links);
    s.score = s.alpha * s.cc + s.density;
    return s;
}

bool keep_under(const PrunePolicy& p, const SignificanceRow& row, double threshold)
{
    switch (p.kind) {
    case PrunePolicy::Kind::none:
        return true;
    case PrunePolicy::Kind::ss_mean:
        return row.ss >= threshold;
    case PrunePolicy::Kind::support:
        return row.support >= p.min_support;
    }
    return true;
}

} // namespace

PrunePolicy PrunePolicy::support(std::size_t min_support)
{
    if (min_support == 0) {
        throw ParamError("min support must be at least 1");
    }
    return {Kind::support, min_support};
}

std::string PrunePolicy::to_string() const
{
    switch (kind) {
    case Kind::none:
        return "none";
    case Kind::ss_mean:
        return "ss-mean";
    case Kind::support:
        return "support:" + std::to_string(min_support);
    }
    return "?";
}

PrunePolicy PrunePolicy::parse(std::string_view name, std::size_t min_support)
{
    if (name == "none") {
        return none();
    }
    if (name == "ss-mean") {
        return ss_mean();
    }
    if (name == "support") {
        return support(min_support);
    }
    throw ParamError("unknown policy '" + std::string(name) + "' (expected none, ss-mean or support)");
}

double clustering_coefficient(const MultidimGraph& g, VertexId v)
{
    auto i = g.index_of(v);
    return cc_of(g, i, neighbor_links(g, i));
}

double local_density(const MultidimGraph& g, VertexId v)
{
    auto i = g.index_of(v);
    return density_of(g, i, neighbor_links(g, i));
}

double attribute_diversity(const MultidimGraph& g, VertexId v)
{
    return alpha_of(g, g.index_of(v));
}

VertexScore vertex_score(const MultidimGraph& g, VertexId v)
{
    return score_of(g, g.index_of(v));
}

std::vector<VertexScore> vertex_scores(const MultidimGraph& g)
{
    std::vector<VertexScore> out(g.vertex_count());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        out[v] = score_of(g, v);
    }
    return out;
}

SignificanceTable significance_table(const MultidimGraph& g, const InvertedIndex& idx)
{
    const auto scores = vertex_scores(g);
    SignificanceTable t;
    t.rows.resize(g.dim_count());
    t.thresholds.resize(g.dim_count(), 0.0);
    for (DimIndex d = 0; d < g.dim_count(); ++d) {
        auto& rows = t.rows[d];
        rows.resize(idx.value_count(d));
        double sum = 0.0;
        for (ValueCode c = 0; c < rows.size(); ++c) {
            double ss = 0.0;
            for (auto v : idx.list(d, c)) {
                ss += scores[v].score;
            }
            rows[c].ss = ss;
            rows[c].support = idx.list(d, c).size();
            sum += ss;
        }
        t.thresholds[d] = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
    }
    return apply_policy(std::move(t), PrunePolicy::ss_mean());
}

SignificanceTable apply_policy(SignificanceTable t, const PrunePolicy& p)
{
    if (p.kind == PrunePolicy::Kind::support && p.min_support == 0) {
        throw ParamError("min support must be at least 1");
    }
    for (std::size_t d = 0; d < t.rows.size(); ++d) {
        for (auto& row : t.rows[d]) {
            row.keep = keep_under(p, row, t.thresholds[d]);
        }
    }
    t.policy = p;
    return t;
}

std::vector<std::vector<double>> degree_baseline(const MultidimGraph& g, const InvertedIndex& idx)
{
    std::vector<std::vector<double>> out(g.dim_count());
    for (DimIndex d = 0; d < g.dim_count(); ++d) {
        out[d].resize(idx.value_count(d), 0.0);
        for (ValueCode c = 0; c < idx.value_count(d); ++c) {
            for (auto v : idx.list(d, c)) {
                out[d][c] += static_cast<double>(g.degree(v));
            }
        }
    }
    return out;
}

void write_significance_csv(const MultidimGraph& g, const SignificanceTable& t, std::ostream& out)
{
    out << "dimension,value,ss,support,keep\n";
    char buf[64];
    for (DimIndex d = 0; d < t.rows.size(); ++d) {
        for (ValueCode c = 0; c < t.rows[d].size(); ++c) {
            const auto& row = t.rows[d][c];
            std::snprintf(buf, sizeof buf, "%.12g", row.ss);
            out << g.dims()[d] << ',' << g.value_name(d, c) << ',' << buf << ',' << row.support << ','
                << (row.keep ? "true" : "false") << '\n';
        }
    }
}

} // namespace sigcube
