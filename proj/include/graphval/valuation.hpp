#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graphval/protocol.hpp"

namespace graphval {

/// Which direction counts as better for each metric. Defaults: more diverse
/// and more relevant data ranks higher, lower disparity ranks higher.
struct MetricPreference {
    bool diversity_high_better = true;
    bool relevance_high_better = true;
    bool disparity_low_better = true;
};

/// Per-seller metric ranks (mean ranks on ties) plus the averaged ranking.
struct SellerRanking {
    std::vector<std::string> seller_ids;  // input order
    std::vector<double> rank_diversity;   // empty when reports lack featural scores
    std::vector<double> rank_relevance;
    std::vector<double> rank_disparity;
    std::vector<double> average_rank;
    std::vector<std::string> final_order;  // ascending average rank, id tie-break
};

/// 1-based mean ranks of values under the given direction: rank 1 is the
/// best value; tied values share the mean of their positions.
std::vector<double> mean_ranks(const std::vector<double>& values, bool higher_better);

/// Rank correlation of two mean-rank vectors (Pearson on ranks). Two
/// identical constant vectors correlate at 1; a single constant vector
/// against a varying one yields 0.
double spearman(const std::vector<double>& ranks_a, const std::vector<double>& ranks_b);

SellerRanking rank_sellers(
    const std::vector<std::pair<std::string, ValuationReport>>& reports,
    const MetricPreference& pref = {});

/// One session per candidate seller against the same buyer, all sharing one
/// proxy (same seed, node count fixed to the global maximum) so scores stay
/// comparable. Output order follows input order.
std::vector<ValuationReport> score_candidates(const GraphSet& buyer,
                                              const std::vector<GraphSet>& candidates,
                                              const SessionConfig& config);

}  // namespace graphval
