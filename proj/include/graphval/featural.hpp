#pragma once

#include <Eigen/Dense>

#include "graphval/graph.hpp"

namespace graphval {

/// Covariance eigenspectrum: eigenvalues descending, clamped at zero;
/// eigenvector column i pairs with eigenvalue i.
struct FeatureSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Norms of one covariance applied to another party's principal directions.
struct ProjectedVariances {
    Eigen::VectorXd values;
};

struct FeaturalScores {
    double diversity;
    double relevance;
};

/// Vertically concatenates every graph's feature rows and removes each
/// column's mean. Errors if any graph lacks features.
Eigen::MatrixXd stack_and_center(const GraphSet& gs);

/// Eigendecomposition of (1/N) X^T X, descending, negatives clamped to zero.
FeatureSpectrum buyer_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& x);

/// values[i] = || (1/N) X^T X basis.col(i) ||_2. The basis columns must be
/// orthonormal to within 1e-6.
ProjectedVariances seller_projected_variances(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                              const Eigen::Ref<const Eigen::MatrixXd>& basis);

/// Geometric means of the per-coordinate normalized spectral gap and overlap:
/// d_i = |lam_i - hat_i| / max_i, r_i = min_i / max_i with
/// max_i = max(lam_i, hat_i); a coordinate with max_i <= 1e-12 contributes
/// d_i = 0, r_i = 1. Always satisfies D + R <= 1.
FeaturalScores diversity_relevance(const Eigen::Ref<const Eigen::VectorXd>& lam,
                                   const Eigen::Ref<const Eigen::VectorXd>& lam_hat);

}  // namespace graphval
