#pragma once

#include <vector>

#include <Eigen/Dense>

#include "graphval/embedding.hpp"
#include "graphval/matching.hpp"

namespace graphval {

/// Mean-pooled embeddings of one party's graphs: row g holds graph g's
/// per-node-slot pooled values, node slots living in the shared key frame.
struct PooledSummary {
    Eigen::MatrixXd data;  // |G| x node_cap
    int node_cap;
};

/// Structural disparity s = |alpha - 1/(1 + gwd)|.
struct DisparityScore {
    double gwd;
    double s;
    double alpha;
};

/// Exact 1-D Wasserstein-1 distance between the empirical distributions of
/// two samples, computed as the integral of |F_a^{-1} - F_b^{-1}| over the
/// merged quantile grid. Handles unequal sample sizes.
double w1_1d(const std::vector<double>& a, const std::vector<double>& b);
double w1_1d(const Eigen::Ref<const Eigen::VectorXd>& a,
             const Eigen::Ref<const Eigen::VectorXd>& b);

/// Key-frame view of an embedding: transpose, zero-pad rows to the
/// permutation size, gather rows through p, zero-pad to node_cap rows.
/// Result is node_cap x (walk_steps + eigenvector_count).
Eigen::MatrixXd align_embedding(const EmbeddingMatrix& e, const Permutation& p,
                                int node_cap);

/// Mean over the embedding axis of a stack of aligned embeddings; row g of
/// the result summarizes stack[g].
PooledSummary mean_pool(const std::vector<Eigen::MatrixXd>& aligned_stack);

/// Pairwise graph Wasserstein distance between two node-column matrices
/// already aligned to a common frame; the narrower matrix is zero-padded.
double gwd_pair(const Eigen::Ref<const Eigen::MatrixXd>& z1,
                const Eigen::Ref<const Eigen::MatrixXd>& z2);

/// Set-level graph Wasserstein distance: sum over node slots of w1_1d
/// between the two summaries' per-slot columns.
double gwd_sets(const PooledSummary& a, const PooledSummary& b);

DisparityScore structural_disparity(double gwd, double alpha);

}  // namespace graphval
