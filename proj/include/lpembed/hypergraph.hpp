#pragma once

#include <string>
#include <vector>

#include "lpembed/embedding.hpp"
#include "lpembed/graph.hpp"
#include "lpembed/pagerank.hpp"

namespace lpembed {

struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> hyperedges;  // each with >= 2 distinct vertices
    std::vector<int> labels;                   // optional, for coloring
    int dropped_singletons = 0;
};

enum class ExpansionKind { Clique, Star };

struct HypergraphDiffusionConfig {
    ExpansionKind primitive = ExpansionKind::Clique;
    double alpha = 0.99;
    // Diffusion parameters carried as provenance for alternative primitives;
    // inert for the expansion-based walks.
    double kappa = 0.000025;
    double gamma = 1.0;
    double rho = 0.5;
    WalkKind walk = WalkKind::Lazy;
    SolverKind solver = SolverKind::Direct;
};

Hypergraph make_hypergraph(int n, std::vector<std::vector<int>> hyperedges);

// One hyperedge per line, whitespace-separated vertex ids. Singleton lines
// are dropped (counted). index_base shifts ids.
Hypergraph load_hypergraph(const std::string& path, int index_base = 0);

// Each hyperedge e adds weight 1/(|e|-1) to every vertex pair inside e.
Graph clique_expand(const Hypergraph& h);

// Bipartite expansion: vertices 0..n-1 plus one auxiliary vertex per
// hyperedge, unit weights on vertex-hyperedge incidences.
Graph star_expand(const Hypergraph& h);

// Seeded PageRank through the chosen expansion, restricted to the original
// vertices (star expansion discards auxiliary mass and renormalizes).
PageRankVector hypergraph_pagerank(const Hypergraph& h, const HypergraphDiffusionConfig& config,
                                   int seed);

// The embedding pipeline with hypergraph PageRank as the column primitive.
// Output rows correspond to the original vertices only.
EmbeddingMatrix hypergraph_log_pr_embedding(const Hypergraph& h, const EmbeddingConfig& config,
                                            const HypergraphDiffusionConfig& diffusion);

}  // namespace lpembed
