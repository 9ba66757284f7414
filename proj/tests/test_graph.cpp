#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lpembed/errors.hpp"
#include "lpembed/generators.hpp"
#include "lpembed/graph.hpp"
#include "lpembed/rng.hpp"

using namespace lpembed;

namespace {

Graph random_connected(Rng& rng, int n, double extra_edge_prob) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({static_cast<int>(rng.uniform_int(v)), v, 0.5 + rng.uniform()});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < extra_edge_prob) edges.push_back({u, v, 0.5 + rng.uniform()});
    return build_graph(edges, n);
}

std::vector<double> basis_vec(int n, int i) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("build_graph on a 3-path") {
    Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.degrees() == std::vector<double>{1.0, 2.0, 1.0});
    CHECK(g.connected());
}

TEST_CASE("duplicate edges merge by weight summation") {
    Graph g = build_graph({{0, 1, 1.0}, {1, 0, 1.0}});
    CHECK(g.num_edges() == 1);
    CHECK(g.degrees() == std::vector<double>{2.0, 2.0});
    CHECK(g.weights(0)[0] == 2.0);
}

TEST_CASE("chain(30) has 29 edges with end degrees 1") {
    Graph g = chain(30);
    CHECK(g.num_edges() == 29);
    CHECK(g.degree(0) == 1.0);
    CHECK(g.degree(29) == 1.0);
    for (int u = 1; u < 29; ++u) CHECK(g.degree(u) == 2.0);
}

TEST_CASE("build_graph input validation") {
    CHECK_THROWS_AS(build_graph({}), DataError);
    CHECK_THROWS_AS(build_graph({{0, 5, 1.0}}, 3), DataError);
    CHECK_THROWS_AS(build_graph({{0, 1, -2.0}}), DataError);
    Graph g = build_graph({{0, 0, 1.0}, {0, 1, 1.0}});
    CHECK(g.dropped_self_loops() == 1);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("adjacency is exactly symmetric") {
    Rng rng(3);
    Graph g = random_connected(rng, 40, 0.08);
    for (int u = 0; u < g.num_vertices(); ++u) {
        auto nbrs = g.neighbors(u);
        auto wts = g.weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            const int v = nbrs[t];
            auto back_n = g.neighbors(v);
            auto back_w = g.weights(v);
            bool found = false;
            for (std::size_t r = 0; r < back_n.size(); ++r)
                if (back_n[r] == u) {
                    found = true;
                    CHECK(back_w[r] == wts[t]);
                }
            CHECK(found);
        }
    }
}

TEST_CASE("lazy walk preserves the 1-norm of nonnegative vectors") {
    Rng rng(5);
    Graph g = random_connected(rng, 60, 0.05);
    WalkOperator lazy(g, WalkKind::Lazy);
    std::vector<double> x(60);
    for (auto& v : x) v = rng.uniform();
    const double before = std::accumulate(x.begin(), x.end(), 0.0);
    auto y = lazy.apply(x);
    const double after = std::accumulate(y.begin(), y.end(), 0.0);
    CHECK(std::fabs(after - before) <= 1e-12 * before);
}

TEST_CASE("lazy walk fixes the degree-proportional stationary distribution") {
    Rng rng(9);
    Graph g = random_connected(rng, 35, 0.1);
    std::vector<double> pi(g.degrees());
    const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (auto& v : pi) v /= total;
    WalkOperator lazy(g, WalkKind::Lazy);
    auto y = lazy.apply(pi);
    for (std::size_t i = 0; i < pi.size(); ++i)
        CHECK(y[i] == doctest::Approx(pi[i]).epsilon(1e-12));
}

TEST_CASE("uniform vector is stationary on regular graphs") {
    // cycle = 2-regular
    std::vector<Edge> edges;
    const int n = 24;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    Graph g = build_graph(edges, n);
    WalkOperator lazy(g, WalkKind::Lazy);
    std::vector<double> u(n, 1.0 / n);
    auto y = lazy.apply(u);
    for (double v : y) CHECK(v == doctest::Approx(1.0 / n).epsilon(1e-14));
}

TEST_CASE("standard walk on a 3-path spreads the middle vertex") {
    Graph g = chain(3);
    WalkOperator standard(g, WalkKind::Standard);
    auto y = standard.apply(basis_vec(3, 1));
    CHECK(y[0] == doctest::Approx(0.5));
    CHECK(y[1] == doctest::Approx(0.0));
    CHECK(y[2] == doctest::Approx(0.5));
}

TEST_CASE("walk operators reject isolated vertices") {
    Graph g = build_graph({{0, 1, 1.0}}, 3);  // vertex 2 isolated
    CHECK(g.has_isolated_vertex());
    CHECK_FALSE(g.connected());
    CHECK_THROWS_AS(WalkOperator(g, WalkKind::Lazy), NumericalError);
}

TEST_CASE("normalized adjacency powers") {
    Graph g = chain(3);
    auto e1 = normalized_adjacency_power(g, 1, 0);
    CHECK(e1 == basis_vec(3, 1));
    // One step from the middle of a 3-path: the end vertices have degree 1,
    // so each receives 1/sqrt(2) (not 1/2).
    auto y = normalized_adjacency_power(g, 1, 1);
    CHECK(y[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(y[1] == doctest::Approx(0.0));
    CHECK(y[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(normalized_adjacency_power(g, 4, 1), DataError);

    // On a cycle every degree is 2 and one step from a seed gives 1/2.
    std::vector<Edge> edges;
    for (int i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6, 1.0});
    Graph c = build_graph(edges, 6);
    auto yc = normalized_adjacency_power(c, 0, 1);
    CHECK(yc[1] == doctest::Approx(0.5));
    CHECK(yc[5] == doctest::Approx(0.5));
}

TEST_CASE("laplacian quadratic form basics") {
    Rng rng(13);
    Graph g = random_connected(rng, 25, 0.15);
    const int n = g.num_vertices();

    std::vector<double> null_dir(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) null_dir[u] = std::sqrt(g.degree(u)) * 3.7;
    CHECK(laplacian_quadratic_form(g, null_dir) <= 1e-10);

    // Any direction not parallel to the nullvector has positive energy.
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = rng.uniform() - 0.5;
        double proj = 0.0, nn = 0.0;
        for (int u = 0; u < n; ++u) {
            proj += x[u] * null_dir[u];
            nn += null_dir[u] * null_dir[u];
        }
        for (int u = 0; u < n; ++u) x[u] -= proj / nn * null_dir[u];
        CHECK(laplacian_quadratic_form(g, x) > 1e-8);
    }
}

TEST_CASE("quadratic form on a single edge") {
    Graph g = build_graph({{0, 1, 1.0}});
    // For x = e1 - e2 the normalized form gives 2 ||x||^2 / 2 ... i.e. 4;
    // the unit-normalized difference vector gives the eigenvalue 2.
    std::vector<double> x = {1.0, -1.0};
    CHECK(laplacian_quadratic_form(g, x) == doctest::Approx(4.0));
    std::vector<double> xn = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
    CHECK(laplacian_quadratic_form(g, xn) == doctest::Approx(2.0));
    // Unnormalized Laplacian on the same edge: x^T (D - A) x = 4 as well.
    CHECK(laplacian_quadratic_form(g, x, LaplacianKind::Unnormalized) == doctest::Approx(4.0));
}

TEST_CASE("immutability supports repeated reads") {
    Graph g = chain(10);
    WalkOperator op(g, WalkKind::Lazy);
    auto a = op.apply(basis_vec(10, 3));
    auto b = op.apply(basis_vec(10, 3));
    CHECK(a == b);
}
