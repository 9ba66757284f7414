#include "lpembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "lpembed/errors.hpp"

namespace lpembed {

namespace {

bool bfs_connected(const Graph& g) {
    const int n = g.num_vertices();
    if (n == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(n));
    queue.push_back(0);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (std::int32_t v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return queue.size() == static_cast<std::size_t>(n);
}

}  // namespace

Graph build_graph(const std::vector<Edge>& edges, int num_vertices) {
    if (edges.empty() && num_vertices <= 0) throw DataError("build_graph: empty edge list");

    int max_id = -1;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v < 0) throw DataError("build_graph: negative vertex id");
        max_id = std::max(max_id, std::max(e.u, e.v));
        if (e.w < 0.0) throw DataError("build_graph: negative edge weight");
        if (!std::isfinite(e.w)) throw DataError("build_graph: non-finite edge weight");
    }
    const int n = num_vertices > 0 ? num_vertices : max_id + 1;
    if (max_id >= n)
        throw DataError("build_graph: vertex id " + std::to_string(max_id) +
                        " out of range [0, " + std::to_string(n) + ")");

    Graph g;
    g.n_ = n;

    // Canonicalize to (min, max) pairs, merging weights across duplicates.
    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
        if (e.u == e.v) {
            ++g.dropped_self_loops_;
            continue;
        }
        if (e.w == 0.0) continue;
        auto key = std::minmax(e.u, e.v);
        merged[{key.first, key.second}] += e.w;
    }

    std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [key, w] : merged) {
        ++counts[static_cast<std::size_t>(key.first) + 1];
        ++counts[static_cast<std::size_t>(key.second) + 1];
    }
    for (int i = 0; i < n; ++i) counts[static_cast<std::size_t>(i) + 1] += counts[i];
    g.row_ptr_ = counts;
    g.nnz_ = g.row_ptr_[static_cast<std::size_t>(n)];
    g.col_idx_.resize(static_cast<std::size_t>(g.nnz_));
    g.values_.resize(static_cast<std::size_t>(g.nnz_));

    std::vector<std::int64_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
    for (const auto& [key, w] : merged) {  // map order keeps rows sorted by column
        auto [u, v] = key;
        g.col_idx_[static_cast<std::size_t>(cursor[u])] = v;
        g.values_[static_cast<std::size_t>(cursor[u]++)] = w;
        g.col_idx_[static_cast<std::size_t>(cursor[v])] = u;
        g.values_[static_cast<std::size_t>(cursor[v]++)] = w;
    }

    g.degrees_.assign(static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) {
        double d = 0.0;
        for (double w : g.weights(u)) d += w;
        g.degrees_[static_cast<std::size_t>(u)] = d;
        if (d <= 0.0) g.has_isolated_ = true;
        g.total_weight_ += d;
    }
    g.total_weight_ /= 2.0;
    g.connected_ = !g.has_isolated_ && bfs_connected(g);
    return g;
}

WalkOperator::WalkOperator(const Graph& g, WalkKind kind) : graph_(&g), kind_(kind) {
    const int n = g.num_vertices();
    if (g.has_isolated_vertex())
        throw NumericalError("walk operator: graph has an isolated vertex (zero degree)");
    inv_degree_.resize(static_cast<std::size_t>(n));
    inv_sqrt_degree_.resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        inv_degree_[u] = 1.0 / g.degree(u);
        inv_sqrt_degree_[u] = 1.0 / std::sqrt(g.degree(u));
    }
}

void WalkOperator::apply(const double* x, double* y) const {
    const std::size_t n = static_cast<std::size_t>(graph_->num_vertices());
    const auto adj = graph_->adjacency_view();
    std::vector<double> scaled(n);
    switch (kind_) {
        case WalkKind::Standard:
        case WalkKind::Lazy: {
            for (std::size_t i = 0; i < n; ++i) scaled[i] = x[i] * inv_degree_[i];
            kernels::spmv(adj, scaled.data(), y);
            if (kind_ == WalkKind::Lazy)
                for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * (x[i] + y[i]);
            break;
        }
        case WalkKind::NormalizedAdjacency: {
            for (std::size_t i = 0; i < n; ++i) scaled[i] = x[i] * inv_sqrt_degree_[i];
            kernels::spmv(adj, scaled.data(), y);
            for (std::size_t i = 0; i < n; ++i) y[i] *= inv_sqrt_degree_[i];
            break;
        }
    }
}

std::vector<double> WalkOperator::apply(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(graph_->num_vertices()))
        throw DataError("apply_walk: vector length mismatch");
    std::vector<double> y(x.size());
    apply(x.data(), y.data());
    return y;
}

std::vector<double> apply_walk(const WalkOperator& op, const std::vector<double>& x) {
    return op.apply(x);
}

std::vector<double> normalized_adjacency_power(const Graph& g, int seed, int power) {
    if (seed < 0 || seed >= g.num_vertices()) throw DataError("seed out of range");
    if (power < 0) throw DataError("power must be nonnegative");
    std::vector<double> x(static_cast<std::size_t>(g.num_vertices()), 0.0);
    x[static_cast<std::size_t>(seed)] = 1.0;
    if (power == 0) return x;
    WalkOperator op(g, WalkKind::NormalizedAdjacency);
    std::vector<double> y(x.size());
    for (int p = 0; p < power; ++p) {
        op.apply(x.data(), y.data());
        std::swap(x, y);
    }
    return x;
}

double laplacian_quadratic_form(const Graph& g, std::span<const double> x, LaplacianKind kind) {
    const std::size_t n = static_cast<std::size_t>(g.num_vertices());
    if (x.size() != n) throw DataError("laplacian_quadratic_form: vector length mismatch");
    const auto adj = g.adjacency_view();
    std::vector<double> t(n), y(n);
    double quad = 0.0;
    if (kind == LaplacianKind::Normalized) {
        for (std::size_t i = 0; i < n; ++i) t[i] = x[i] / std::sqrt(g.degree(static_cast<int>(i)));
        kernels::spmv(adj, t.data(), y.data());
        double cross = 0.0;
        for (std::size_t i = 0; i < n; ++i) cross += t[i] * y[i];
        quad = kernels::dot(x.data(), x.data(), n) - cross;
    } else {
        kernels::spmv(adj, x.data(), y.data());
        double dx = 0.0;
        for (std::size_t i = 0; i < n; ++i) dx += g.degree(static_cast<int>(i)) * x[i] * x[i];
        quad = dx - kernels::dot(x.data(), y.data(), n);
    }
    return quad < 0.0 ? 0.0 : quad;
}

}  // namespace lpembed
