#include "graphval/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "graphval/eig.hpp"
#include "graphval/errors.hpp"

namespace graphval {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    const int n = static_cast<int>(mapping_.size());
    if (n == 0) {
        throw ValidationError("permutation must be non-empty");
    }
    std::vector<char> seen(mapping_.size(), 0);
    for (int image : mapping_) {
        if (image < 0 || image >= n || seen[image]) {
            throw ValidationError("mapping is not a bijection on [0, " +
                                  std::to_string(n) + ")");
        }
        seen[image] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> mapping(n > 0 ? n : 0);
    std::iota(mapping.begin(), mapping.end(), 0);
    return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int i = 0; i < size(); ++i) {
        inv[mapping_[i]] = i;
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::extended(int n) const {
    if (n < size()) {
        throw ValidationError("cannot extend permutation to a smaller size");
    }
    std::vector<int> mapping = mapping_;
    for (int i = size(); i < n; ++i) {
        mapping.push_back(i);
    }
    return Permutation(std::move(mapping));
}

Eigen::MatrixXd pad_laplacian(const Eigen::Ref<const Eigen::MatrixXd>& l, int target) {
    if (l.rows() != l.cols()) {
        throw ValidationError("pad_laplacian: matrix must be square");
    }
    if (target < l.rows()) {
        throw ValidationError("pad_laplacian: target smaller than matrix");
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(target, target);
    out.topLeftCorner(l.rows(), l.cols()) = l;
    return out;
}

Eigen::MatrixXd conjugate_by(const Eigen::Ref<const Eigen::MatrixXd>& l,
                             const Permutation& p) {
    const int n = p.size();
    if (l.rows() != n || l.cols() != n) {
        throw ValidationError("conjugate_by: dimension mismatch");
    }
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = l(p(i), p(j));
        }
    }
    return out;
}

namespace {

// Jonker-Volgenant shortest augmenting paths for the min-cost square
// assignment problem. Also returns dual potentials with
// u[i] + v[j] <= cost(i, j) everywhere and equality on matched pairs
// (1-based, index 0 is the algorithm's sentinel column).
struct HungarianSolution {
    std::vector<int> row_of_col;
    std::vector<double> u, v;
};

HungarianSolution hungarian_min(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    HungarianSolution sol;
    sol.row_of_col.assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        sol.row_of_col[j - 1] = p[j] - 1;
    }
    sol.u = std::move(u);
    sol.v = std::move(v);
    return sol;
}

// Kuhn augmenting-path search over the tight subgraph, skipping fixed columns.
bool try_augment(int row, const std::vector<std::vector<int>>& tight,
                 const std::vector<char>& col_fixed, std::vector<char>& visited,
                 std::vector<int>& row_match, std::vector<int>& col_match) {
    for (int col : tight[row]) {
        if (col_fixed[col] || visited[col]) continue;
        visited[col] = 1;
        const int other = col_match[col];
        if (other == -1 ||
            try_augment(other, tight, col_fixed, visited, row_match, col_match)) {
            col_match[col] = row;
            row_match[row] = col;
            return true;
        }
    }
    return false;
}

}  // namespace

Permutation solve_assignment(const Eigen::Ref<const Eigen::MatrixXd>& profit) {
    const int n = static_cast<int>(profit.rows());
    if (profit.cols() != n) {
        throw ValidationError("solve_assignment: profit matrix must be square");
    }
    if (!profit.allFinite()) {
        throw ValidationError("solve_assignment: profit entries must be finite");
    }
    if (n == 1) {
        return Permutation::identity(1);
    }

    const Eigen::MatrixXd cost = -profit;
    const HungarianSolution sol = hungarian_min(cost);

    // Every optimal assignment lives inside the subgraph of dual-tight edges,
    // and every perfect matching of that subgraph is optimal. Walk the rows
    // in order and keep the smallest column that leaves the rest matchable.
    const double tol = 1e-9 * std::max(1.0, cost.cwiseAbs().maxCoeff());
    std::vector<std::vector<int>> tight(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (cost(i, j) - sol.u[i + 1] - sol.v[j + 1] <= tol) {
                tight[i].push_back(j);
            }
        }
    }

    std::vector<int> row_match(n, -1), col_match(n, -1);
    for (int j = 0; j < n; ++j) {
        row_match[sol.row_of_col[j]] = j;
        col_match[j] = sol.row_of_col[j];
    }

    std::vector<char> col_fixed(n, 0), visited(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j : tight[i]) {
            if (col_fixed[j]) continue;
            if (row_match[i] == j) {
                col_fixed[j] = 1;
                break;
            }
            // Steal column j from its current row; accept if that row can be
            // re-matched through the remaining tight edges.
            const int displaced = col_match[j];
            const int old_col = row_match[i];
            row_match[i] = j;
            col_match[j] = i;
            row_match[displaced] = -1;
            col_match[old_col] = -1;
            col_fixed[j] = 1;
            std::fill(visited.begin(), visited.end(), 0);
            if (try_augment(displaced, tight, col_fixed, visited, row_match, col_match)) {
                break;
            }
            col_fixed[j] = 0;
            row_match[displaced] = j;
            col_match[j] = displaced;
            row_match[i] = old_col;
            col_match[old_col] = i;
        }
    }
    return Permutation(std::move(row_match));
}

MatchResult spectral_match(const Graph& g1, const Graph& g2) {
    const int n = std::max(g1.node_count(), g2.node_count());
    const Eigen::MatrixXd l1 = pad_laplacian(normalized_laplacian(g1), n);
    const Eigen::MatrixXd l2 = pad_laplacian(normalized_laplacian(g2), n);
    const Eigen::MatrixXd u1 = sym_eig(l1).eigenvectors.cwiseAbs();
    const Eigen::MatrixXd u2 = sym_eig(l2).eigenvectors.cwiseAbs();
    Permutation perm = solve_assignment(u1 * u2.transpose());
    const double residual = (l1 - conjugate_by(l2, perm)).norm();
    return MatchResult{std::move(perm), residual};
}

double conformity_error(const Graph& g1, const Graph& g2, const Permutation& p1,
                        const Permutation& p2) {
    if (p1.size() != p2.size()) {
        throw ValidationError("conformity_error: permutation dimensions differ");
    }
    if (p1.size() < g1.node_count() || p2.size() < g2.node_count()) {
        throw ValidationError("conformity_error: permutation smaller than graph");
    }
    const int n = p1.size();
    const Eigen::MatrixXd a = conjugate_by(pad_laplacian(normalized_laplacian(g1), n), p1);
    const Eigen::MatrixXd b = conjugate_by(pad_laplacian(normalized_laplacian(g2), n), p2);
    return (a - b).norm();
}

double transitivity_bound(const MatchResult& m1, const MatchResult& m2) {
    return m1.residual + m2.residual;
}

}  // namespace graphval
