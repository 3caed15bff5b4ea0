#pragma once

#include <filesystem>

#include "graphval/graph.hpp"

namespace graphval {

/// Reads a whitespace-separated "u v" edge list ('#' lines are comments).
/// Node ids are reindexed densely in sorted order; self-loops are dropped
/// (a count goes to stderr); duplicate edges collapse to one.
Graph load_edge_list(const std::filesystem::path& path);

/// Reads an N x r CSV of reals (row i = node i) and attaches it to g.
Graph load_feature_csv(const std::filesystem::path& path, const Graph& g);

/// Reads a TU-format dataset directory: <DS>_A.txt (1-based "u, v" pairs,
/// symmetrized), <DS>_graph_indicator.txt, optional <DS>_node_attributes.txt.
GraphSet load_tu_dataset(const std::filesystem::path& dir);

/// Reads a JSON manifest {"graphs": [{"edges": path, "features": path|null}]}.
/// Relative paths resolve against the manifest's directory.
GraphSet load_manifest(const std::filesystem::path& path);

/// Writes the canonical edge list of g; load_edge_list(write_edge_list(g))
/// reproduces the edge set exactly.
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace graphval
