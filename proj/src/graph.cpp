#include "graphval/graph.hpp"

#include <algorithm>
#include <string>

#include "graphval/errors.hpp"

namespace graphval {

Graph::Graph(int node_count, std::vector<std::pair<int, int>> edges,
             std::optional<Eigen::MatrixXd> features)
    : node_count_(node_count), edges_(std::move(edges)), features_(std::move(features)) {
    if (node_count_ <= 0) {
        throw ValidationError("graph must have at least one node");
    }
    for (auto& [u, v] : edges_) {
        if (u == v) {
            throw ValidationError("self-loop at node " + std::to_string(u));
        }
        if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) {
            throw ValidationError("edge endpoint out of range: " + std::to_string(u) +
                                  " " + std::to_string(v));
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw ValidationError("duplicate edge");
    }
    if (features_ && features_->rows() != node_count_) {
        throw ValidationError("feature row count " + std::to_string(features_->rows()) +
                              " does not match node count " + std::to_string(node_count_));
    }
}

std::optional<int> Graph::feature_dim() const {
    if (!features_) return std::nullopt;
    return static_cast<int>(features_->cols());
}

Graph Graph::relabeled(const std::vector<int>& relabeling) const {
    if (static_cast<int>(relabeling.size()) != node_count_) {
        throw ValidationError("relabeling size does not match node count");
    }
    std::vector<std::pair<int, int>> renamed;
    renamed.reserve(edges_.size());
    for (auto [u, v] : edges_) {
        renamed.emplace_back(relabeling[u], relabeling[v]);
    }
    std::optional<Eigen::MatrixXd> feats;
    if (features_) {
        Eigen::MatrixXd moved(features_->rows(), features_->cols());
        for (int i = 0; i < node_count_; ++i) {
            moved.row(relabeling[i]) = features_->row(i);
        }
        feats = std::move(moved);
    }
    return Graph(node_count_, std::move(renamed), std::move(feats));
}

Graph Graph::with_features(Eigen::MatrixXd features) const {
    return Graph(node_count_, edges_, std::move(features));
}

GraphSet::GraphSet(std::vector<Graph> graphs) : graphs_(std::move(graphs)) {
    if (graphs_.empty()) {
        throw ValidationError("graph set must be non-empty");
    }
    feature_dim_ = graphs_.front().feature_dim();
    max_node_count_ = 0;
    for (const auto& g : graphs_) {
        if (g.feature_dim() != feature_dim_) {
            throw ValidationError("inconsistent feature dimensions across graph set");
        }
        max_node_count_ = std::max(max_node_count_, g.node_count());
    }
}

Eigen::VectorXi degree_vector(const Graph& g) {
    Eigen::VectorXi deg = Eigen::VectorXi::Zero(g.node_count());
    for (auto [u, v] : g.edges()) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Eigen::SparseMatrix<double> sparse_adjacency(const Graph& g) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(2 * g.edges().size());
    for (auto [u, v] : g.edges()) {
        entries.emplace_back(u, v, 1.0);
        entries.emplace_back(v, u, 1.0);
    }
    Eigen::SparseMatrix<double> a(g.node_count(), g.node_count());
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
    if (nodes.empty()) {
        throw ValidationError("induced_subgraph: empty node selection");
    }
    std::vector<int> local(g.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int v = nodes[i];
        if (v < 0 || v >= g.node_count() || local[v] != -1) {
            throw ValidationError("induced_subgraph: bad node selection");
        }
        local[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) {
        const int lu = local[u];
        const int lv = local[v];
        if (lu != -1 && lv != -1) {
            edges.emplace_back(lu, lv);
        }
    }
    std::optional<Eigen::MatrixXd> feats;
    if (g.features()) {
        Eigen::MatrixXd sub(nodes.size(), g.features()->cols());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sub.row(static_cast<Eigen::Index>(i)) = g.features()->row(nodes[i]);
        }
        feats = std::move(sub);
    }
    return Graph(static_cast<int>(nodes.size()), std::move(edges), std::move(feats));
}

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const int n = g.node_count();
    const Eigen::VectorXi deg = degree_vector(g);
    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        inv_sqrt[i] = deg[i] > 0 ? 1.0 / std::sqrt(static_cast<double>(deg[i])) : 0.0;
    }
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (deg[i] > 0) l(i, i) = 1.0;
    }
    for (auto [u, v] : g.edges()) {
        const double w = -inv_sqrt[u] * inv_sqrt[v];
        l(u, v) = w;
        l(v, u) = w;
    }
    return l;
}

}  // namespace graphval
