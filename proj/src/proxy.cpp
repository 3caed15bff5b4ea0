#include "graphval/proxy.hpp"

#include <random>

#include "graphval/errors.hpp"

namespace graphval {

namespace {

// Uniform double in [0, 1) from the high 53 bits; identical on every
// platform, unlike std::uniform_real_distribution.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph generate_proxy(int node_count, double edge_probability, std::uint64_t seed) {
    if (node_count < 2) {
        throw ValidationError("proxy graph needs at least two nodes");
    }
    if (!(edge_probability > 0.0 && edge_probability < 1.0)) {
        throw ValidationError("edge probability must lie strictly inside (0, 1)");
    }
    for (std::uint64_t attempt_seed = seed;; ++attempt_seed) {
        std::mt19937_64 rng(attempt_seed);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < node_count; ++u) {
            for (int v = u + 1; v < node_count; ++v) {
                if (next_unit(rng) < edge_probability) {
                    edges.emplace_back(u, v);
                }
            }
        }
        if (!edges.empty()) {
            return Graph(node_count, std::move(edges));
        }
    }
}

}  // namespace graphval
