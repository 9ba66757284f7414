#pragma once

#include <cstdint>
#include <string>

#include "lpembed/graph.hpp"

namespace lpembed {

enum class GraphFamily { Chain, KnnGeometric, Sbm };

struct GeneratorSpec {
    GraphFamily family = GraphFamily::Chain;
    int n = 30;        // vertex count (chain, knn) or per-block size (sbm)
    int k = 6;         // neighbors (knn) or block count (sbm)
    double p = 0.25;   // intra-block probability (sbm)
    double q = 0.005;  // inter-block probability (sbm)
    std::uint64_t rng_seed = 1;
};

Graph generate(const GeneratorSpec& spec);

// Path graph on n vertices, unit weights.
Graph chain(int n);

// n points uniform in the unit square, each connected to its k nearest
// Euclidean neighbors (ties by lower index), edges symmetrized as the
// undirected union. Coordinates are retained on the result.
Graph knn_geometric(int n, int k, std::uint64_t rng_seed);

// Planted-partition model: `blocks` groups of `n_per_block` vertices,
// intra-block edge probability p_within, inter-block q_between. Block
// labels are retained on the result. Output may be disconnected; callers
// that need connectivity must check the flag.
Graph sbm(int n_per_block, int blocks, double p_within, double q_between,
          std::uint64_t rng_seed);

// Edge-list text format: one `u v [w]` per line (w defaults to 1),
// `#` starts a comment. index_base shifts ids (1 for 1-indexed files).
Graph load_edge_list(const std::string& path, int index_base = 0);

// Edge list plus a JSON sidecar (<path>.json) carrying coordinates and/or
// labels, as written by the generator CLI.
Graph load_point_graph(const std::string& path, int index_base = 0);

}  // namespace lpembed
