#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sigcube/graph.hpp"
#include "sigcube/inverted_index.hpp"

namespace sigcube {

/// Per-vertex structural components and their combination
/// score = alpha * cc + density.
struct VertexScore {
    double alpha = 0.0;   // neighborhood attribute diversity
    double cc = 0.0;      // clustering coefficient
    double density = 0.0; // closed-neighborhood edge density
    double score = 0.0;

    friend bool operator==(const VertexScore&, const VertexScore&) = default;
};

struct PrunePolicy {
    enum class Kind { none, ss_mean, support };

    Kind kind = Kind::ss_mean;
    std::size_t min_support = 1; // only read for Kind::support

    static PrunePolicy none() { return {Kind::none, 1}; }
    static PrunePolicy ss_mean() { return {Kind::ss_mean, 1}; }
    static PrunePolicy support(std::size_t min_support);

    /// "none", "ss-mean" or "support:<k>".
    [[nodiscard]] std::string to_string() const;
    /// Accepts "none", "ss-mean", "support" (with min_support supplied separately).
    static PrunePolicy parse(std::string_view name, std::size_t min_support = 1);

    friend bool operator==(const PrunePolicy&, const PrunePolicy&) = default;
};

struct SignificanceRow {
    double ss = 0.0;
    std::size_t support = 0;
    bool keep = true;
};

/// Rows are indexed [dimension][value code]; thresholds hold the per-dimension
/// unweighted mean of ss.
struct SignificanceTable {
    std::vector<std::vector<SignificanceRow>> rows;
    std::vector<double> thresholds;
    PrunePolicy policy = PrunePolicy::ss_mean();

    [[nodiscard]] const SignificanceRow& at(DimIndex d, ValueCode c) const { return rows[d][c]; }
};

// Each of these throws LookupError for an unknown vertex id.
double clustering_coefficient(const MultidimGraph& g, VertexId v);
double local_density(const MultidimGraph& g, VertexId v);
double attribute_diversity(const MultidimGraph& g, VertexId v);
VertexScore vertex_score(const MultidimGraph& g, VertexId v);

/// Scores for every vertex, indexed by VertexIndex.
std::vector<VertexScore> vertex_scores(const MultidimGraph& g);

/// Sums vertex scores over each value's posting list; keep flags follow the
/// ss-mean rule.
SignificanceTable significance_table(const MultidimGraph& g, const InvertedIndex& idx);

/// Recomputes keep flags only.
SignificanceTable apply_policy(SignificanceTable t, const PrunePolicy& p);

/// Sum of member degrees per (dimension, value), indexed like the table rows.
std::vector<std::vector<double>> degree_baseline(const MultidimGraph& g, const InvertedIndex& idx);

/// CSV with header `dimension,value,ss,support,keep`, rows by (dimension index, value).
void write_significance_csv(const MultidimGraph& g, const SignificanceTable& t, std::ostream& out);

} // namespace sigcube
