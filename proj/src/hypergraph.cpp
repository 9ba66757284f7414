#include "lpembed/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lpembed/errors.hpp"

namespace lpembed {

Hypergraph make_hypergraph(int n, std::vector<std::vector<int>> hyperedges) {
    Hypergraph h;
    h.n = n;
    for (auto& e : hyperedges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (!e.empty() && (e.front() < 0 || e.back() >= n))
            throw DataError("hypergraph: vertex id out of range");
        if (e.size() < 2) {
            ++h.dropped_singletons;
            continue;
        }
        h.hyperedges.push_back(std::move(e));
    }
    return h;
}

Hypergraph load_hypergraph(const std::string& path, int index_base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::vector<int>> edges;
    std::string line;
    int lineno = 0;
    int max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<int> e;
        long long v;
        while (ss >> v) {
            v -= index_base;
            if (v < 0)
                throw DataError(path + ":" + std::to_string(lineno) +
                                ": vertex id below index base");
            e.push_back(static_cast<int>(v));
            max_id = std::max(max_id, static_cast<int>(v));
        }
        if (!ss.eof())
            throw DataError(path + ":" + std::to_string(lineno) + ": expected integer ids");
        if (!e.empty()) edges.push_back(std::move(e));
    }
    if (max_id < 0) throw DataError(path + ": no hyperedges found");
    return make_hypergraph(max_id + 1, std::move(edges));
}

Graph clique_expand(const Hypergraph& h) {
    std::map<std::pair<int, int>, double> pair_weight;
    for (const auto& e : h.hyperedges) {
        const double w = 1.0 / (static_cast<double>(e.size()) - 1.0);
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b)
                pair_weight[{e[a], e[b]}] += w;
    }
    std::vector<Edge> edges;
    edges.reserve(pair_weight.size());
    for (const auto& [key, w] : pair_weight) edges.push_back({key.first, key.second, w});
    return build_graph(edges, h.n);
}

Graph star_expand(const Hypergraph& h) {
    std::vector<Edge> edges;
    int aux = h.n;
    for (const auto& e : h.hyperedges) {
        for (int v : e) edges.push_back({v, aux, 1.0});
        ++aux;
    }
    return build_graph(edges, aux);
}

PageRankVector hypergraph_pagerank(const Hypergraph& h, const HypergraphDiffusionConfig& config,
                                   int seed) {
    if (seed < 0 || seed >= h.n) throw DataError("hypergraph_pagerank: seed out of range");
    const Graph expansion =
        config.primitive == ExpansionKind::Clique ? clique_expand(h) : star_expand(h);
    if (!expansion.connected())
        throw DataError("hypergraph_pagerank: expansion graph is disconnected");
    PageRankConfig pr;
    pr.alpha = config.alpha;
    pr.walk = config.walk;
    pr.solver = config.solver;
    PageRankSolver solver(expansion, pr);
    PageRankVector full = solver.solve_seed(seed);
    if (config.primitive == ExpansionKind::Clique) return full;

    PageRankVector out;
    out.alpha = full.alpha;
    out.seed = seed;
    out.values.assign(full.values.begin(), full.values.begin() + h.n);
    double mass = 0.0;
    for (double v : out.values) mass += v;
    if (mass <= 0.0) throw NumericalError("hypergraph_pagerank: no mass on original vertices");
    for (double& v : out.values) v /= mass;
    out.residual = full.residual;
    return out;
}

EmbeddingMatrix hypergraph_log_pr_embedding(const Hypergraph& h, const EmbeddingConfig& config,
                                            const HypergraphDiffusionConfig& diffusion) {
    const Graph expansion =
        diffusion.primitive == ExpansionKind::Clique ? clique_expand(h) : star_expand(h);
    if (!expansion.connected())
        throw DataError("hypergraph embedding: expansion graph is disconnected");

    if (diffusion.primitive == ExpansionKind::Clique) {
        // The expansion is an ordinary graph on the original vertices, so the
        // graph pipeline applies unchanged (and reduces exactly to it when
        // every hyperedge is a pair).
        EmbeddingConfig cfg = config;
        cfg.alpha = diffusion.alpha;
        cfg.walk = diffusion.walk;
        cfg.solver = diffusion.solver;
        return log_pagerank_embedding(expansion, cfg);
    }

    // Star expansion: sample original vertices, solve on the expansion,
    // restrict and renormalize each column before the transform.
    const int n = h.n;
    int s = config.samples > 0 ? config.samples : default_sample_count(n, config.k);
    if (!config.with_replacement && s > n) s = n;
    if (s < config.k + 1) throw DataError("hypergraph embedding: need samples >= k+1");
    PageRankConfig pr;
    pr.alpha = diffusion.alpha;
    pr.walk = diffusion.walk;
    pr.solver = diffusion.solver;
    PageRankSolver solver(expansion, pr);

    const std::vector<int> seeds = sample_seeds(n, s, config.rng_seed, config.with_replacement);
    SampleMatrix x;
    x.alpha = diffusion.alpha;
    x.seeds = seeds;
    x.columns.resize(n, static_cast<Eigen::Index>(seeds.size()));
    for (std::size_t j = 0; j < seeds.size(); ++j) {
        PageRankVector full = solver.solve_seed(seeds[j]);
        double mass = 0.0;
        for (int i = 0; i < n; ++i) mass += full.values[i];
        for (int i = 0; i < n; ++i)
            x.columns(i, static_cast<Eigen::Index>(j)) = full.values[i] / mass;
    }
    if (config.transform == Transform::Log) x = log_transform(x, config.zero_replacement_factor);
    if (config.normalize_columns)
        for (Eigen::Index j = 0; j < x.columns.cols(); ++j)
            x.columns.col(j) /= x.columns.col(j).norm();
    EmbeddingMatrix out = svd_embedding(x, config.k);
    out.config = config;
    return out;
}

}  // namespace lpembed
