#pragma once

#include <cstdint>

#include "graphval/graph.hpp"

namespace graphval {

/// Seeded Erdős–Rényi G(n, p) sample. The same (node_count,
/// edge_probability, seed) triple always yields the same edge set; an
/// all-isolated draw is retried with seed+1 until at least one edge exists.
Graph generate_proxy(int node_count, double edge_probability, std::uint64_t seed);

}  // namespace graphval
