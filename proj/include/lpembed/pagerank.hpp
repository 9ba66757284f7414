#pragma once

#include <memory>
#include <vector>

#include "lpembed/graph.hpp"

namespace lpembed {

enum class SolverKind { Direct, Iterative };

struct PageRankConfig {
    double alpha = 0.99;               // teleportation, in (0, 1)
    WalkKind walk = WalkKind::Lazy;    // Lazy or Standard
    SolverKind solver = SolverKind::Direct;
    double tol = 1e-10;                // iterative residual tolerance (1-norm)
};

struct PageRankVector {
    std::vector<double> values;  // nonnegative, sums to 1
    int seed = -1;               // seeding vertex, -1 for a general teleport vector
    double alpha = 0.0;
    double residual = 0.0;       // ||(I - aP)x - (1-a)v||_1 of the accepted solve
};

// Prepared solver for (I - alpha P). The direct kind holds a sparse LU
// factorization; the iterative kind applies Richardson iteration on the
// fixed point x = alpha P x + (1-alpha) v. Read-only after construction,
// so concurrent solves with distinct right-hand sides are safe.
class PageRankSolver {
public:
    PageRankSolver(const Graph& g, PageRankConfig config);
    ~PageRankSolver();
    PageRankSolver(PageRankSolver&&) noexcept;
    PageRankSolver& operator=(PageRankSolver&&) noexcept;

    const PageRankConfig& config() const { return config_; }
    const Graph& graph() const { return *graph_; }

    // v must be nonnegative and sum to 1 (checked to 1e-8).
    PageRankVector solve(const std::vector<double>& v) const;
    PageRankVector solve_seed(int u) const;

private:
    struct Impl;
    const Graph* graph_;
    PageRankConfig config_;
    std::unique_ptr<Impl> impl_;
};

inline PageRankSolver prepare(const Graph& g, const PageRankConfig& config) {
    return PageRankSolver(g, config);
}
inline PageRankVector solve(const PageRankSolver& solver, const std::vector<double>& v) {
    return solver.solve(v);
}

// Exact seeded PageRank on the n-chain under the standard walk A D^-1,
// evaluated from the two-sided geometric closed form. The seed is 1-indexed.
// Matches the linear-system solve at every index to machine precision; see
// the pagerank tests for the cross-check grid.
PageRankVector chain_closed_form(int n, int seed_one_indexed, double alpha);

// Affine-in-distance approximation of log x_i on the chain:
//   -|seed - i| * log(r) + log(sqrt((1-alpha)/(1+alpha)))
// where r = (1 + sqrt(1-alpha^2))/alpha is the decay root. Indices 1-based.
double chain_log_approx(int n, int seed_one_indexed, double alpha, int i_one_indexed);

// The geometric decay root of the chain recurrence for the chosen walk;
// log-PageRank on the chain falls by log(root) per step of distance.
// Standard walk: (1 + sqrt(1-a^2))/a. Lazy walk: (2-a + 2 sqrt(1-a))/a.
double chain_decay_root(double alpha, WalkKind walk = WalkKind::Standard);

}  // namespace lpembed
