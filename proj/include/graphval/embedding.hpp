#pragma once

#include <Eigen/Dense>

#include "graphval/graph.hpp"

namespace graphval {

/// Per-node structural embedding: the first walk_steps rows hold random-walk
/// return probabilities, the next eigenvector_count rows hold absolute
/// Laplacian eigenvector entries. Shape (walk_steps + eigenvector_count) x N.
struct EmbeddingMatrix {
    Eigen::MatrixXd data;
    int walk_steps;
    int eigenvector_count;

    int node_count() const { return static_cast<int>(data.cols()); }
    int dim() const { return static_cast<int>(data.rows()); }
};

/// Random-walk return probabilities: entry (j-1, i) is the probability of a
/// walk from node i being back at node i after j steps, j = 1..steps.
/// Columns of degree-0 nodes are zero.
Eigen::MatrixXd rwse(const Graph& g, int steps);

/// Absolute entries of the first non-trivial normalized-Laplacian
/// eigenvectors (eigenvalue > 1e-8, ascending). Rows beyond the available
/// non-trivial eigenvectors are zero.
Eigen::MatrixXd lap_pe(const Graph& g, int count);

/// Vertical stack [rwse; lap_pe].
EmbeddingMatrix embed(const Graph& g, int walk_steps, int eigenvector_count);

}  // namespace graphval
