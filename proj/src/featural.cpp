#include "graphval/featural.hpp"

#include <cmath>

#include "graphval/eig.hpp"
#include "graphval/errors.hpp"

namespace graphval {

Eigen::MatrixXd stack_and_center(const GraphSet& gs) {
    if (!gs.feature_dim()) {
        throw ValidationError("stack_and_center: graphs carry no features");
    }
    Eigen::Index total_rows = 0;
    for (const auto& g : gs.graphs()) {
        total_rows += g.node_count();
    }
    Eigen::MatrixXd stacked(total_rows, *gs.feature_dim());
    Eigen::Index at = 0;
    for (const auto& g : gs.graphs()) {
        stacked.middleRows(at, g.node_count()) = *g.features();
        at += g.node_count();
    }
    stacked.rowwise() -= stacked.colwise().mean();
    return stacked;
}

FeatureSpectrum buyer_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& x) {
    const double n = static_cast<double>(x.rows());
    const Eigen::MatrixXd cov = (x.transpose() * x) / n;
    const SpectralDecomposition dec = sym_eig(cov);

    const Eigen::Index r = cov.rows();
    FeatureSpectrum spec;
    spec.eigenvalues.resize(r);
    spec.eigenvectors.resize(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        spec.eigenvalues[i] = std::max(dec.eigenvalues[r - 1 - i], 0.0);
        spec.eigenvectors.col(i) = dec.eigenvectors.col(r - 1 - i);
    }
    return spec;
}

ProjectedVariances seller_projected_variances(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& basis) {
    if (basis.rows() != basis.cols() || basis.rows() != x.cols()) {
        throw ValidationError("seller_projected_variances: basis dimension mismatch");
    }
    const Eigen::Index r = basis.cols();
    const double ortho_err =
        (basis.transpose() * basis - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
    if (ortho_err > 1e-6) {
        throw ValidationError("seller_projected_variances: basis is not orthonormal");
    }
    const double n = static_cast<double>(x.rows());
    const Eigen::MatrixXd cov = (x.transpose() * x) / n;
    ProjectedVariances out;
    out.values = (cov * basis).colwise().norm().transpose();
    return out;
}

FeaturalScores diversity_relevance(const Eigen::Ref<const Eigen::VectorXd>& lam,
                                   const Eigen::Ref<const Eigen::VectorXd>& lam_hat) {
    const Eigen::Index r = lam.size();
    if (lam_hat.size() != r || r == 0) {
        throw ValidationError("diversity_relevance: spectra lengths differ or are empty");
    }
    if ((lam.array() < 0).any() || (lam_hat.array() < 0).any()) {
        throw ValidationError("diversity_relevance: spectra must be non-negative");
    }

    // Geometric means in log space; a single zero coordinate zeroes the whole
    // product, so handle those outside the logs.
    double log_d = 0.0, log_r = 0.0;
    bool d_zero = false, r_zero = false;
    for (Eigen::Index i = 0; i < r; ++i) {
        const double hi = std::max(lam[i], lam_hat[i]);
        double d_i, r_i;
        if (hi <= 1e-12) {
            d_i = 0.0;
            r_i = 1.0;
        } else {
            d_i = std::abs(lam[i] - lam_hat[i]) / hi;
            r_i = std::min(lam[i], lam_hat[i]) / hi;
        }
        if (d_i == 0.0) d_zero = true; else log_d += std::log(d_i);
        if (r_i == 0.0) r_zero = true; else log_r += std::log(r_i);
    }
    const double inv_r = 1.0 / static_cast<double>(r);
    FeaturalScores scores;
    scores.diversity = d_zero ? 0.0 : std::exp(log_d * inv_r);
    scores.relevance = r_zero ? 0.0 : std::exp(log_r * inv_r);
    return scores;
}

}  // namespace graphval
