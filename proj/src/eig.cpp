#include "graphval/eig.hpp"

#include "graphval/errors.hpp"

namespace graphval {

SpectralDecomposition sym_eig(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("sym_eig: matrix is not square");
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw ValidationError("sym_eig: matrix is not symmetric");
    }
    // Symmetrize before solving so the tolerated asymmetry cannot leak
    // into the result.
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("sym_eig: eigendecomposition failed to converge");
    }

    SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) {
        Eigen::Index imax = 0;
        out.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (out.eigenvectors(imax, j) < 0.0) {
            out.eigenvectors.col(j) = -out.eigenvectors.col(j);
        }
    }
    return out;
}

}  // namespace graphval
