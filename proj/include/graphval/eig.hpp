#pragma once

#include <Eigen/Dense>

namespace graphval {

/// Eigendecomposition of a symmetric matrix. Eigenvalues ascending;
/// column j of eigenvectors pairs with eigenvalue j; every column is
/// normalized so its largest-magnitude entry is non-negative.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Decomposes a symmetric matrix. The input must be symmetric to within
/// 1e-10 per entry; the sign convention above makes the result
/// deterministic for identical input bits.
SpectralDecomposition sym_eig(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace graphval
