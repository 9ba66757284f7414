#include "lpembed/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lpembed/errors.hpp"
#include "lpembed/io.hpp"
#include "lpembed/rng.hpp"

namespace lpembed {

Graph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case GraphFamily::Chain:
            return chain(spec.n);
        case GraphFamily::KnnGeometric:
            return knn_geometric(spec.n, spec.k, spec.rng_seed);
        case GraphFamily::Sbm:
            return sbm(spec.n, spec.k, spec.p, spec.q, spec.rng_seed);
    }
    throw DataError("generate: unknown family");
}

Graph chain(int n) {
    if (n <= 2) throw DataError("chain: n must exceed 2");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    return build_graph(edges, n);
}

Graph knn_geometric(int n, int k, std::uint64_t rng_seed) {
    if (n <= k || k < 1) throw DataError("knn_geometric: need n > k >= 1");
    Rng rng(rng_seed);
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }

    // Duplicate points would make nearest-neighbor ties ill-posed; nudge them
    // deterministically.
    {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
        });
        for (int i = 1; i < n; ++i) {
            int a = order[i - 1], b = order[i];
            if (pts[a].x == pts[b].x && pts[a].y == pts[b].y) {
                pts[b].x += 1e-12 * (1.0 + rng.uniform());
                pts[b].y += 1e-12 * (1.0 + rng.uniform());
            }
        }
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    std::vector<std::pair<double, int>> cand(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
            cand[m++] = {dx * dx + dy * dy, j};
        }
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        for (int t = 0; t < k; ++t) edges.push_back({i, cand[t].second, 1.0});
    }
    Graph g = build_graph(edges, n);
    g.coords = std::move(pts);
    return g;
}

Graph sbm(int n_per_block, int blocks, double p_within, double q_between,
          std::uint64_t rng_seed) {
    if (n_per_block < 1 || blocks < 1) throw DataError("sbm: sizes must be positive");
    if (p_within < 0 || p_within > 1 || q_between < 0 || q_between > 1)
        throw DataError("sbm: probabilities must lie in [0, 1]");
    const int n = n_per_block * blocks;
    Rng rng(rng_seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        const int bu = u / n_per_block;
        for (int v = u + 1; v < n; ++v) {
            const double p = (v / n_per_block == bu) ? p_within : q_between;
            if (p > 0.0 && rng.uniform() < p) edges.push_back({u, v, 1.0});
        }
    }
    if (edges.empty()) edges.push_back({0, 1, 0.0});  // keep n vertices representable
    Graph g = build_graph(edges, n);
    g.labels.resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) g.labels[u] = u / n_per_block;
    return g;
}

Graph load_edge_list(const std::string& path, int index_base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<Edge> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        long long u, v;
        double w = 1.0;
        if (!(ss >> u >> v))
            throw DataError(path + ":" + std::to_string(lineno) + ": expected `u v [w]`");
        ss >> w;
        u -= index_base;
        v -= index_base;
        if (u < 0 || v < 0)
            throw DataError(path + ":" + std::to_string(lineno) + ": vertex id below index base");
        edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    }
    if (edges.empty()) throw DataError(path + ": no edges found");
    return build_graph(edges);
}

Graph load_point_graph(const std::string& path, int index_base) {
    Graph g = load_edge_list(path, index_base);
    io::read_graph_sidecar(path + ".json", g);
    return g;
}

}  // namespace lpembed
