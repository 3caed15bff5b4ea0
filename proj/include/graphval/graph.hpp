#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace graphval {

/// Undirected simple graph: 0-based node indices, canonical edge list
/// (u < v, sorted, duplicate-free), optional per-node feature rows.
/// Immutable after construction and safe to share across threads.
class Graph {
public:
    Graph(int node_count, std::vector<std::pair<int, int>> edges,
          std::optional<Eigen::MatrixXd> features = std::nullopt);

    int node_count() const { return node_count_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::optional<Eigen::MatrixXd>& features() const { return features_; }

    /// Number of feature columns, or nullopt for a featureless graph.
    std::optional<int> feature_dim() const;

    /// Copy of this graph with node i renamed to relabeling[i].
    Graph relabeled(const std::vector<int>& relabeling) const;

    /// Copy of this graph with the given feature matrix attached.
    Graph with_features(Eigen::MatrixXd features) const;

private:
    int node_count_;
    std::vector<std::pair<int, int>> edges_;
    std::optional<Eigen::MatrixXd> features_;
};

/// Ordered collection of graphs with a uniform feature dimension
/// (all graphs carry features of the same width, or none do).
class GraphSet {
public:
    explicit GraphSet(std::vector<Graph> graphs);

    const std::vector<Graph>& graphs() const { return graphs_; }
    std::size_t size() const { return graphs_.size(); }
    std::optional<int> feature_dim() const { return feature_dim_; }
    int max_node_count() const { return max_node_count_; }

private:
    std::vector<Graph> graphs_;
    std::optional<int> feature_dim_;
    int max_node_count_;
};

/// Per-node edge-incidence counts.
Eigen::VectorXi degree_vector(const Graph& g);

/// 0/1 adjacency in sparse form.
Eigen::SparseMatrix<double> sparse_adjacency(const Graph& g);

/// Symmetric normalized Laplacian I - B^{-1/2} A B^{-1/2}. Rows and columns
/// of degree-0 nodes are all zero, diagonal included (pseudo-inverse
/// convention for B^{-1/2}).
Eigen::MatrixXd normalized_laplacian(const Graph& g);

/// Subgraph induced by the given (distinct) node ids, densely reindexed in
/// list order; feature rows follow their nodes.
Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

}  // namespace graphval
