#include "lpembed/pagerank.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "lpembed/errors.hpp"

namespace lpembed {

namespace {

// I - alpha P as a column-major sparse matrix, P the chosen walk.
Eigen::SparseMatrix<double> system_matrix(const Graph& g, double alpha, WalkKind walk) {
    const int n = g.num_vertices();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(g.num_edges()) * 2 + static_cast<std::size_t>(n));
    const double diag = walk == WalkKind::Lazy ? 1.0 - 0.5 * alpha : 1.0;
    const double off = walk == WalkKind::Lazy ? -0.5 * alpha : -alpha;
    for (int u = 0; u < n; ++u) {
        trip.emplace_back(u, u, diag);
        const double inv_d = 1.0 / g.degree(u);
        auto nbrs = g.neighbors(u);
        auto wts = g.weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t)
            trip.emplace_back(nbrs[t], u, off * wts[t] * inv_d);  // column u
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

}  // namespace

struct PageRankSolver::Impl {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    WalkOperator walk;
    Impl(const Graph& g, WalkKind kind) : walk(g, kind) {}
};

PageRankSolver::PageRankSolver(const Graph& g, PageRankConfig config)
    : graph_(&g), config_(config) {
    if (!(config.alpha >= 0.0 && config.alpha < 1.0))
        throw DataError("pagerank: alpha must lie in [0, 1)");
    if (config.walk == WalkKind::NormalizedAdjacency)
        throw DataError("pagerank: walk must be lazy or standard");
    if (!g.connected()) throw DataError("pagerank: graph must be connected");
    impl_ = std::make_unique<Impl>(g, config.walk);
    if (config_.solver == SolverKind::Direct) {
        auto m = system_matrix(g, config_.alpha, config_.walk);
        impl_->lu.compute(m);
        if (impl_->lu.info() != Eigen::Success)
            throw NumericalError("pagerank: sparse LU factorization failed");
    }
}

PageRankSolver::~PageRankSolver() = default;
PageRankSolver::PageRankSolver(PageRankSolver&&) noexcept = default;
PageRankSolver& PageRankSolver::operator=(PageRankSolver&&) noexcept = default;

PageRankVector PageRankSolver::solve(const std::vector<double>& v) const {
    const std::size_t n = static_cast<std::size_t>(graph_->num_vertices());
    if (v.size() != n) throw DataError("pagerank: teleport vector length mismatch");
    double vsum = 0.0;
    for (double x : v) {
        if (x < 0.0) throw DataError("pagerank: teleport vector has a negative entry");
        vsum += x;
    }
    if (std::fabs(vsum - 1.0) > 1e-8)
        throw DataError("pagerank: teleport vector must sum to 1");

    const double alpha = config_.alpha;
    PageRankVector out;
    out.alpha = alpha;
    out.values.resize(n);

    if (config_.solver == SolverKind::Direct) {
        Eigen::Map<const Eigen::VectorXd> rhs(v.data(), static_cast<Eigen::Index>(n));
        Eigen::VectorXd x = impl_->lu.solve((1.0 - alpha) * rhs);
        if (impl_->lu.info() != Eigen::Success)
            throw NumericalError("pagerank: triangular solve failed");
        for (std::size_t i = 0; i < n; ++i) out.values[i] = x[static_cast<Eigen::Index>(i)];
    } else {
        // Richardson iteration on x = alpha P x + (1-alpha) v.
        std::vector<double> x(v), px(n);
        const double scale = 1.0 - alpha;
        const long max_iters =
            alpha > 0.0 ? static_cast<long>(std::log(config_.tol * 0.01) / std::log(alpha)) + 64
                        : 8;
        double res = std::numeric_limits<double>::infinity();
        for (long it = 0; it < max_iters; ++it) {
            impl_->walk.apply(x.data(), px.data());
            res = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double next = alpha * px[i] + scale * v[i];
                res += std::fabs(next - x[i]);
                x[i] = next;
            }
            // Fixed-point step residual bounds the system residual:
            // (I - aP)x - (1-a)v = x - (aPx + (1-a)v).
            if (res <= config_.tol) break;
        }
        if (res > config_.tol)
            throw NumericalError("pagerank: iterative solver did not reach tolerance " +
                                 std::to_string(config_.tol));
        out.values = std::move(x);
    }

    // Accept only solves whose 1-norm residual meets the contract.
    std::vector<double> px(n);
    impl_->walk.apply(out.values.data(), px.data());
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res += std::fabs(out.values[i] - alpha * px[i] - (1.0 - alpha) * v[i]);
    out.residual = res;
    if (res > 1e-8)
        throw NumericalError("pagerank: residual " + std::to_string(res) + " exceeds 1e-8");
    return out;
}

PageRankVector PageRankSolver::solve_seed(int u) const {
    const int n = graph_->num_vertices();
    if (u < 0 || u >= n) throw DataError("pagerank: seed out of range");
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(u)] = 1.0;
    PageRankVector out = solve(v);
    out.seed = u;
    return out;
}

double chain_decay_root(double alpha, WalkKind walk) {
    if (walk == WalkKind::Lazy)
        return (2.0 - alpha + 2.0 * std::sqrt(1.0 - alpha)) / alpha;
    return (1.0 + std::sqrt(1.0 - alpha * alpha)) / alpha;
}

namespace {

// Stable two-sided evaluation. With r the growing root and q = 1/r^2:
//   f(i) = r^(i-k) (1 + q^(i-1)) / (1 + q^(k-1))   for the left side,
//   g(i) = r^(k-i) (1 + q^(n-i)) / (1 + q^(n-k))   for the right side,
// both normalized to 1 at the seed. All powers have nonpositive exponents.
struct ChainSides {
    double r, q;
    int n, k;
    double f(int i) const {
        return std::exp((i - k) * std::log(r)) * (1.0 + std::pow(q, i - 1)) /
               (1.0 + std::pow(q, k - 1));
    }
    double g(int i) const {
        return std::exp((k - i) * std::log(r)) * (1.0 + std::pow(q, n - i)) /
               (1.0 + std::pow(q, n - k));
    }
};

}  // namespace

PageRankVector chain_closed_form(int n, int k, double alpha) {
    if (n <= 2) throw DataError("chain_closed_form: n must exceed 2");
    if (k < 1 || k > n) throw DataError("chain_closed_form: seed out of range (1-indexed)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DataError("chain_closed_form: alpha must lie in (0, 1)");

    const double r = chain_decay_root(alpha);
    const ChainSides sides{r, 1.0 / (r * r), n, k};

    // The seed-row balance fixes the overall constant. Interior boundary
    // degrees cancel against the halved endpoint values, so one expression
    // covers seeds adjacent to the ends as well.
    double c;
    if (k == 1) {
        c = 2.0 * (1.0 - alpha) / (1.0 - alpha * sides.g(2));
    } else if (k == n) {
        c = 2.0 * (1.0 - alpha) / (1.0 - alpha * sides.f(n - 1));
    } else {
        c = (1.0 - alpha) / (1.0 - 0.5 * alpha * (sides.f(k - 1) + sides.g(k + 1)));
    }

    PageRankVector out;
    out.alpha = alpha;
    out.seed = k - 1;
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double x;
        if (i < k)
            x = c * sides.f(i);
        else if (i > k)
            x = c * sides.g(i);
        else
            x = c;
        // Degree-1 endpoints carry half the extended value under the
        // column-stochastic standard walk.
        if (i == 1 || i == n) x *= 0.5;
        out.values[static_cast<std::size_t>(i - 1)] = x;
    }
    return out;
}

double chain_log_approx(int n, int k, double alpha, int i) {
    if (n <= 2) throw DataError("chain_log_approx: n must exceed 2");
    if (k < 1 || k > n || i < 1 || i > n) throw DataError("chain_log_approx: index out of range");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DataError("chain_log_approx: alpha must lie in (0, 1)");
    const double r = chain_decay_root(alpha);
    return -std::abs(k - i) * std::log(r) + 0.5 * std::log((1.0 - alpha) / (1.0 + alpha));
}

}  // namespace lpembed
