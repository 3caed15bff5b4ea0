#include "graphval/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphval/errors.hpp"

namespace graphval {

std::vector<double> mean_ranks(const std::vector<double>& values, bool higher_better) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return higher_better ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = shared;
        }
        i = j + 1;
    }
    return ranks;
}

double spearman(const std::vector<double>& ranks_a, const std::vector<double>& ranks_b) {
    if (ranks_a.size() != ranks_b.size() || ranks_a.empty()) {
        throw ValidationError("spearman: rank vectors must be non-empty and equal length");
    }
    const double n = static_cast<double>(ranks_a.size());
    const double mean_a = std::accumulate(ranks_a.begin(), ranks_a.end(), 0.0) / n;
    const double mean_b = std::accumulate(ranks_b.begin(), ranks_b.end(), 0.0) / n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < ranks_a.size(); ++i) {
        const double da = ranks_a[i] - mean_a;
        const double db = ranks_b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 && var_b == 0.0) {
        return ranks_a == ranks_b ? 1.0 : 0.0;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        return 0.0;
    }
    return cov / std::sqrt(var_a * var_b);
}

SellerRanking rank_sellers(
    const std::vector<std::pair<std::string, ValuationReport>>& reports,
    const MetricPreference& pref) {
    if (reports.size() < 2) {
        throw ValidationError("rank_sellers: need at least two sellers");
    }
    const bool featural = reports.front().second.featural.has_value();
    for (const auto& [id, report] : reports) {
        if (report.featural.has_value() != featural) {
            throw ValidationError("rank_sellers: mixed report shapes (featural presence)");
        }
    }

    SellerRanking out;
    std::vector<double> s_values;
    std::vector<double> d_values, r_values;
    for (const auto& [id, report] : reports) {
        out.seller_ids.push_back(id);
        s_values.push_back(report.s.s);
        if (featural) {
            d_values.push_back(report.featural->diversity);
            r_values.push_back(report.featural->relevance);
        }
    }

    out.rank_disparity = mean_ranks(s_values, !pref.disparity_low_better);
    if (featural) {
        out.rank_diversity = mean_ranks(d_values, pref.diversity_high_better);
        out.rank_relevance = mean_ranks(r_values, pref.relevance_high_better);
    }

    const std::size_t n = reports.size();
    out.average_rank.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = out.rank_disparity[i];
        double count = 1.0;
        if (featural) {
            sum += out.rank_diversity[i] + out.rank_relevance[i];
            count += 2.0;
        }
        out.average_rank[i] = sum / count;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (out.average_rank[a] != out.average_rank[b]) {
            return out.average_rank[a] < out.average_rank[b];
        }
        return out.seller_ids[a] < out.seller_ids[b];
    });
    for (std::size_t i : order) {
        out.final_order.push_back(out.seller_ids[i]);
    }
    return out;
}

std::vector<ValuationReport> score_candidates(const GraphSet& buyer,
                                              const std::vector<GraphSet>& candidates,
                                              const SessionConfig& config) {
    if (candidates.empty()) {
        throw ValidationError("score_candidates: no candidates");
    }
    // Pin the proxy across sessions: same seed plus a shared node count.
    SessionConfig shared = config;
    if (!shared.proxy_nodes) {
        int n = buyer.max_node_count();
        for (const auto& c : candidates) {
            n = std::max(n, c.max_node_count());
        }
        shared.proxy_nodes = n;
    }
    std::vector<ValuationReport> reports;
    reports.reserve(candidates.size());
    for (const auto& candidate : candidates) {
        reports.push_back(run_session(buyer, candidate, shared).report);
    }
    return reports;
}

}  // namespace graphval
