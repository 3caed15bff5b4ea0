#pragma once

#include <vector>

#include <Eigen/Dense>

#include "graphval/graph.hpp"

namespace graphval {

/// Bijection on [0, n): entry i is the image of index i.
class Permutation {
public:
    explicit Permutation(std::vector<int> mapping);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& mapping() const { return mapping_; }

    Permutation inverse() const;

    /// Extension to a larger index range, identity on the new indices.
    Permutation extended(int n) const;

private:
    std::vector<int> mapping_;
};

/// Alignment of one graph onto another: the permutation carries the second
/// graph's padded indices into the first graph's frame; residual is the
/// Frobenius mismatch of the padded normalized Laplacians under it.
struct MatchResult {
    Permutation permutation;
    double residual;
};

/// Zero-pads a square matrix into the top-left corner of a target x target one.
Eigen::MatrixXd pad_laplacian(const Eigen::Ref<const Eigen::MatrixXd>& l, int target);

/// M(i, j) = l(p(i), p(j)).
Eigen::MatrixXd conjugate_by(const Eigen::Ref<const Eigen::MatrixXd>& l,
                             const Permutation& p);

/// Maximizes sum_i profit(i, result(i)) over permutations; ties resolved in
/// favour of the lexicographically smallest mapping. O(n^3) Hungarian solve
/// followed by a lexicographic sweep over the optimal-assignment subgraph.
Permutation solve_assignment(const Eigen::Ref<const Eigen::MatrixXd>& profit);

/// Matches g2 onto g1 through the absolute-eigenvector linear-assignment
/// relaxation of Laplacian alignment, padding the smaller graph with zeros.
MatchResult spectral_match(const Graph& g1, const Graph& g2);

/// Frobenius distance between the two permuted padded Laplacians,
/// || P1^T L1 P1 - P2^T L2 P2 ||_F. Permutations must share one dimension.
double conformity_error(const Graph& g1, const Graph& g2, const Permutation& p1,
                        const Permutation& p2);

/// Upper bound on the conformity error of two graphs matched against the
/// same key: the sum of the two matching residuals.
double transitivity_bound(const MatchResult& m1, const MatchResult& m2);

}  // namespace graphval
