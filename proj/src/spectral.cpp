#include "lpembed/spectral.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "lpembed/embedding.hpp"
#include "lpembed/errors.hpp"
#include "lpembed/rng.hpp"

namespace lpembed {

namespace {

Eigen::SparseMatrix<double> laplacian_matrix(const Graph& g, SpectralKind kind) {
    const int n = g.num_vertices();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(g.num_edges()) * 2 + static_cast<std::size_t>(n));
    const bool normalized = kind == SpectralKind::NormalizedLaplacian;
    for (int u = 0; u < n; ++u) {
        trip.emplace_back(u, u, normalized ? 1.0 : g.degree(u));
        auto nbrs = g.neighbors(u);
        auto wts = g.weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            const double w = normalized
                                 ? wts[t] / std::sqrt(g.degree(u) * g.degree(nbrs[t]))
                                 : wts[t];
            trip.emplace_back(u, nbrs[t], -w);
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

Eigen::VectorXd trivial_nullvector(const Graph& g, SpectralKind kind) {
    const int n = g.num_vertices();
    Eigen::VectorXd v(n);
    if (kind == SpectralKind::NormalizedLaplacian) {
        for (int u = 0; u < n; ++u) v[u] = std::sqrt(g.degree(u));
    } else {
        v.setOnes();
    }
    return v / v.norm();
}

void flag_near_degenerate(SpectralBasis& basis) {
    for (int i = 0; i + 1 < basis.eigenvalues.size(); ++i)
        if (std::fabs(basis.eigenvalues[i] - basis.eigenvalues[i + 1]) < 1e-10)
            basis.near_degenerate.push_back(i);
}

SpectralBasis dense_path(const Graph& g, int k, SpectralKind kind) {
    const int n = g.num_vertices();
    Eigen::MatrixXd dense = Eigen::MatrixXd(laplacian_matrix(g, kind));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
        throw NumericalError("spectral: dense eigendecomposition failed");

    SpectralBasis out;
    out.which = kind;
    out.eigenvalues = es.eigenvalues().head(k + 1);
    out.vectors = es.eigenvectors().leftCols(k + 1);
    // Pin the trivial pair exactly; the solver's lowest mode must match it.
    const Eigen::VectorXd v0 = trivial_nullvector(g, kind);
    if (std::fabs(std::fabs(v0.dot(out.vectors.col(0))) - 1.0) > 1e-6)
        throw NumericalError("spectral: lowest eigenvector does not match the nullvector");
    out.vectors.col(0) = v0;
    out.eigenvalues[0] = 0.0;
    sign_normalize_columns(out.vectors);
    flag_near_degenerate(out);
    return out;
}

// Deflated shift-invert block iteration: factor L + sigma I once, iterate a
// small block against it while projecting out the known nullvector, and
// Rayleigh-Ritz on the block. Converges on the invariant subspace even when
// individual eigenvalues cluster.
SpectralBasis sparse_path(const Graph& g, int k, SpectralKind kind,
                          const SpectralOptions& opts) {
    const int n = g.num_vertices();
    Eigen::SparseMatrix<double> lap = laplacian_matrix(g, kind);
    const double scale =
        kind == SpectralKind::NormalizedLaplacian ? 1.0 : g.total_weight() * 2.0 / n;
    const double sigma = 1e-8 * scale;

    Eigen::SparseMatrix<double> shifted = lap;
    for (int u = 0; u < n; ++u) shifted.coeffRef(u, u) += sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("spectral: LDLT factorization failed");

    const Eigen::VectorXd v0 = trivial_nullvector(g, kind);
    const int block = std::min(n - 1, k + 6);

    Rng rng(0x5EC7A11ULL);
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = rng.uniform() - 0.5;

    auto deflate = [&](Eigen::MatrixXd& m) {
        for (int j = 0; j < m.cols(); ++j) m.col(j) -= v0 * v0.dot(m.col(j));
    };

    Eigen::VectorXd ritz;
    Eigen::MatrixXd z;
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        deflate(x);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, block);
        q = qr.householderQ() * q;

        Eigen::MatrixXd lq = lap * q;
        Eigen::MatrixXd small = q.transpose() * lq;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
        ritz = es.eigenvalues();
        z = q * es.eigenvectors();

        // Residuals for the k wanted pairs.
        bool ok = true;
        for (int j = 0; j < k && ok; ++j) {
            const Eigen::VectorXd r = lap * z.col(j) - ritz[j] * z.col(j);
            ok = r.norm() <= opts.residual_tol * std::max(1.0, std::fabs(ritz[j])) * scale;
        }
        if (ok) {
            converged = true;
            break;
        }
        x = ldlt.solve(z);
        if (ldlt.info() != Eigen::Success)
            throw NumericalError("spectral: shift-invert solve failed");
    }
    if (!converged)
        throw NumericalError(
            "spectral: block iteration did not converge within " +
            std::to_string(opts.max_iterations) +
            " iterations (residual tolerance " + std::to_string(opts.residual_tol) + ")");

    SpectralBasis out;
    out.which = kind;
    out.eigenvalues.resize(k + 1);
    out.vectors.resize(n, k + 1);
    out.eigenvalues[0] = 0.0;
    out.vectors.col(0) = v0;
    for (int j = 0; j < k; ++j) {
        out.eigenvalues[j + 1] = ritz[j];
        out.vectors.col(j + 1) = z.col(j);
    }
    sign_normalize_columns(out.vectors);
    flag_near_degenerate(out);
    return out;
}

}  // namespace

SpectralBasis spectral_embedding(const Graph& g, int k, SpectralKind kind,
                                 const SpectralOptions& opts) {
    if (kind == SpectralKind::LazyWalk)
        throw DataError("spectral_embedding: use lazy_walk_eigenpairs for the walk basis");
    if (!g.connected()) throw DataError("spectral: graph must be connected");
    if (k < 1 || k + 1 > g.num_vertices())
        throw DataError("spectral: need 1 <= k and k+1 <= n");
    return g.num_vertices() <= opts.dense_cutoff ? dense_path(g, k, kind)
                                                 : sparse_path(g, k, kind, opts);
}

SpectralBasis lazy_walk_eigenpairs(const Graph& g, int k, const SpectralOptions& opts) {
    // W = (I + A D^-1)/2 is similar to I - L/2 via D^1/2, so reuse the
    // normalized-Laplacian solve and map the spectrum.
    SpectralBasis base = spectral_embedding(g, k, SpectralKind::NormalizedLaplacian, opts);
    SpectralBasis out;
    out.which = SpectralKind::LazyWalk;
    out.eigenvalues.resize(base.eigenvalues.size());
    out.vectors.resize(base.vectors.rows(), base.vectors.cols());
    for (int j = 0; j < base.eigenvalues.size(); ++j) {
        out.eigenvalues[j] = 1.0 - 0.5 * base.eigenvalues[j];
        Eigen::VectorXd y = base.vectors.col(j);
        for (int i = 0; i < y.size(); ++i) y[i] *= std::sqrt(g.degree(i));
        out.vectors.col(j) = y / y.norm();
    }
    sign_normalize_columns(out.vectors);
    flag_near_degenerate(out);
    return out;
}

}  // namespace lpembed
