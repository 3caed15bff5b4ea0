#include "graphval/transport.hpp"

#include <algorithm>
#include <cmath>

#include "graphval/errors.hpp"

namespace graphval {

double w1_1d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw ValidationError("w1_1d: empty sample");
    }
    for (double x : a) {
        if (!std::isfinite(x)) throw ValidationError("w1_1d: non-finite sample");
    }
    for (double x : b) {
        if (!std::isfinite(x)) throw ValidationError("w1_1d: non-finite sample");
    }
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    // Piecewise-constant inverse CDFs share breakpoints on the grid of
    // multiples of 1/(n*m); integer bookkeeping keeps the merge exact.
    const long long n = static_cast<long long>(sa.size());
    const long long m = static_cast<long long>(sb.size());
    const long long total = n * m;
    long long covered = 0;
    std::size_t i = 0, j = 0;
    double acc = 0.0;
    while (covered < total) {
        const long long next_a = static_cast<long long>(i + 1) * m;
        const long long next_b = static_cast<long long>(j + 1) * n;
        const long long next = std::min(next_a, next_b);
        acc += static_cast<double>(next - covered) * std::abs(sa[i] - sb[j]);
        covered = next;
        if (next == next_a) ++i;
        if (next == next_b) ++j;
    }
    return acc / static_cast<double>(total);
}

double w1_1d(const Eigen::Ref<const Eigen::VectorXd>& a,
             const Eigen::Ref<const Eigen::VectorXd>& b) {
    return w1_1d(std::vector<double>(a.data(), a.data() + a.size()),
                 std::vector<double>(b.data(), b.data() + b.size()));
}

Eigen::MatrixXd align_embedding(const EmbeddingMatrix& e, const Permutation& p,
                                int node_cap) {
    if (p.size() < e.node_count()) {
        throw ValidationError("align_embedding: permutation smaller than embedding");
    }
    if (node_cap < p.size()) {
        throw ValidationError("align_embedding: node cap smaller than permutation");
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(node_cap, e.dim());
    for (int slot = 0; slot < p.size(); ++slot) {
        const int src = p(slot);
        if (src < e.node_count()) {
            out.row(slot) = e.data.col(src).transpose();
        }
    }
    return out;
}

PooledSummary mean_pool(const std::vector<Eigen::MatrixXd>& aligned_stack) {
    if (aligned_stack.empty()) {
        throw ValidationError("mean_pool: empty stack");
    }
    const Eigen::Index cap = aligned_stack.front().rows();
    const Eigen::Index dim = aligned_stack.front().cols();
    PooledSummary pooled;
    pooled.node_cap = static_cast<int>(cap);
    pooled.data.resize(static_cast<Eigen::Index>(aligned_stack.size()), cap);
    for (std::size_t g = 0; g < aligned_stack.size(); ++g) {
        const auto& mat = aligned_stack[g];
        if (mat.rows() != cap || mat.cols() != dim) {
            throw ValidationError("mean_pool: ragged stack");
        }
        pooled.data.row(static_cast<Eigen::Index>(g)) = mat.rowwise().mean().transpose();
    }
    return pooled;
}

double gwd_pair(const Eigen::Ref<const Eigen::MatrixXd>& z1,
                const Eigen::Ref<const Eigen::MatrixXd>& z2) {
    const Eigen::Index cap = std::max(z1.cols(), z2.cols());
    const Eigen::VectorXd pad1 = Eigen::VectorXd::Zero(z1.rows());
    const Eigen::VectorXd pad2 = Eigen::VectorXd::Zero(z2.rows());
    double acc = 0.0;
    for (Eigen::Index col = 0; col < cap; ++col) {
        const Eigen::VectorXd& c1 = col < z1.cols() ? z1.col(col).eval() : pad1;
        const Eigen::VectorXd& c2 = col < z2.cols() ? z2.col(col).eval() : pad2;
        acc += w1_1d(c1, c2);
    }
    return acc;
}

double gwd_sets(const PooledSummary& a, const PooledSummary& b) {
    const int cap = std::max(a.node_cap, b.node_cap);
    const Eigen::VectorXd pad_a = Eigen::VectorXd::Zero(a.data.rows());
    const Eigen::VectorXd pad_b = Eigen::VectorXd::Zero(b.data.rows());
    double acc = 0.0;
    for (int col = 0; col < cap; ++col) {
        const Eigen::VectorXd& ca = col < a.data.cols() ? a.data.col(col).eval() : pad_a;
        const Eigen::VectorXd& cb = col < b.data.cols() ? b.data.col(col).eval() : pad_b;
        acc += w1_1d(ca, cb);
    }
    return acc;
}

DisparityScore structural_disparity(double gwd, double alpha) {
    if (!(gwd >= 0.0) || !std::isfinite(gwd)) {
        throw ValidationError("structural_disparity: gwd must be finite and non-negative");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("structural_disparity: alpha must lie in [0, 1]");
    }
    return DisparityScore{gwd, std::abs(alpha - 1.0 / (1.0 + gwd)), alpha};
}

}  // namespace graphval
