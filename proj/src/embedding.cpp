#include "graphval/embedding.hpp"

#include <Eigen/Sparse>

#include "graphval/eig.hpp"
#include "graphval/errors.hpp"

namespace graphval {

Eigen::MatrixXd rwse(const Graph& g, int steps) {
    if (steps < 1) {
        throw ValidationError("rwse: step count must be positive");
    }
    const int n = g.node_count();
    const Eigen::VectorXi deg = degree_vector(g);

    // Column-stochastic walk operator A B^{-1}; columns of isolated nodes
    // stay zero.
    Eigen::SparseMatrix<double> walk = sparse_adjacency(g);
    for (int col = 0; col < walk.outerSize(); ++col) {
        if (deg[col] == 0) continue;
        const double inv = 1.0 / static_cast<double>(deg[col]);
        for (Eigen::SparseMatrix<double>::InnerIterator it(walk, col); it; ++it) {
            it.valueRef() *= inv;
        }
    }

    Eigen::MatrixXd out(steps, n);
    Eigen::MatrixXd power = Eigen::MatrixXd(walk);  // walk^1
    out.row(0) = power.diagonal().transpose();
    for (int j = 1; j < steps; ++j) {
        power = walk * power;  // walk^(j+1)
        out.row(j) = power.diagonal().transpose();
    }
    return out;
}

Eigen::MatrixXd lap_pe(const Graph& g, int count) {
    if (count < 1) {
        throw ValidationError("lap_pe: eigenvector count must be positive");
    }
    const int n = g.node_count();
    const SpectralDecomposition dec = sym_eig(normalized_laplacian(g));

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(count, n);
    int row = 0;
    for (int j = 0; j < n && row < count; ++j) {
        if (dec.eigenvalues[j] <= 1e-8) continue;  // trivial, one per component
        out.row(row++) = dec.eigenvectors.col(j).cwiseAbs().transpose();
    }
    return out;
}

EmbeddingMatrix embed(const Graph& g, int walk_steps, int eigenvector_count) {
    EmbeddingMatrix emb;
    emb.walk_steps = walk_steps;
    emb.eigenvector_count = eigenvector_count;
    emb.data.resize(walk_steps + eigenvector_count, g.node_count());
    emb.data.topRows(walk_steps) = rwse(g, walk_steps);
    emb.data.bottomRows(eigenvector_count) = lap_pe(g, eigenvector_count);
    return emb;
}

}  // namespace graphval
