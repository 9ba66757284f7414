#include "lpembed/embedding.hpp"

#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "lpembed/errors.hpp"
#include "lpembed/kernels.hpp"
#include "lpembed/rng.hpp"

namespace lpembed {

int default_sample_count(int n, int k) {
    return static_cast<int>(std::ceil((10.0 + k) * std::log(static_cast<double>(n))));
}

std::vector<int> sample_seeds(int n, int s, std::uint64_t rng_seed, bool with_replacement) {
    if (s <= 0) throw DataError("sample_seeds: need s > 0");
    if (!with_replacement && s > n) throw DataError("sample_seeds: s exceeds n");
    Rng rng(rng_seed);
    return with_replacement ? rng.sample_with_replacement(n, s)
                            : rng.sample_without_replacement(n, s);
}

SampleMatrix build_sample_matrix(const PageRankSolver& solver, const std::vector<int>& seeds) {
    const int n = solver.graph().num_vertices();
    SampleMatrix out;
    out.alpha = solver.config().alpha;
    out.seeds = seeds;
    out.columns.resize(n, static_cast<Eigen::Index>(seeds.size()));
    for (std::size_t j = 0; j < seeds.size(); ++j) {
        PageRankVector col = solver.solve_seed(seeds[j]);
        for (int i = 0; i < n; ++i) out.columns(i, static_cast<Eigen::Index>(j)) = col.values[i];
    }
    return out;
}

SampleMatrix log_transform(const SampleMatrix& x, double zero_replacement_factor) {
    if (!(zero_replacement_factor > 0.0 && zero_replacement_factor < 1.0))
        throw DataError("log_transform: replacement factor must lie in (0, 1)");
    const Eigen::Index n = x.columns.rows(), s = x.columns.cols();

    for (Eigen::Index j = 0; j < s; ++j) {
        if ((x.columns.col(j).array() <= 0.0).all())
            throw NumericalError("log_transform: column " + std::to_string(j) +
                                 " is entirely zero (disconnected graph or failed solve)");
    }
    const double min_pos =
        kernels::min_positive(x.columns.data(), static_cast<std::size_t>(n * s));
    const double substitute = zero_replacement_factor * min_pos;

    SampleMatrix out;
    out.seeds = x.seeds;
    out.alpha = x.alpha;
    out.columns.resize(n, s);
    int replaced = 0;
    // Patch zeros first so the bulk log runs on strictly positive data.
    Eigen::MatrixXd patched = x.columns;
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (patched(i, j) <= 0.0) {
                patched(i, j) = substitute;
                ++replaced;
            }
    kernels::log_positive(patched.data(), out.columns.data(),
                          static_cast<std::size_t>(n * s));
    out.replacement_count = replaced;
    return out;
}

void sign_normalize_columns(Eigen::MatrixXd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double a = std::fabs(m(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (m(arg, j) < 0.0) m.col(j) = -m.col(j);
    }
}

void thin_svd(const Eigen::MatrixXd& m, Eigen::MatrixXd& u, Eigen::VectorXd& s) {
    if (m.rows() >= 2 * m.cols()) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        Eigen::MatrixXd r =
            qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU);
        Eigen::MatrixXd q = Eigen::MatrixXd::Identity(m.rows(), m.cols());
        q = qr.householderQ() * q;
        u = q * svd.matrixU();
        s = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
        u = svd.matrixU();
        s = svd.singularValues();
    }
}

EmbeddingMatrix svd_embedding(const SampleMatrix& y, int k) {
    const Eigen::Index n = y.columns.rows(), s = y.columns.cols();
    if (k < 1) throw DataError("svd_embedding: need k >= 1");
    if (k + 1 > std::min(n, s))
        throw DataError("svd_embedding: need k+1 <= min(n, samples)");

    Eigen::MatrixXd u;
    Eigen::VectorXd sv;
    thin_svd(y.columns, u, sv);

    EmbeddingMatrix out;
    out.singular_values = sv;
    out.seeds = y.seeds;
    out.replacement_count = y.replacement_count;
    out.z = u.middleCols(1, k);
    sign_normalize_columns(out.z);

    const double tol = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(n, s)) * (sv.size() ? sv[0] : 0.0);
    for (int j = 1; j <= k; ++j) {
        if (sv[j] <= tol) {
            out.degenerate = true;
            out.degenerate_note = "singular value " + std::to_string(j + 1) +
                                  " is below numerical rank tolerance";
            break;
        }
    }
    return out;
}

EmbeddingMatrix log_pagerank_embedding(const Graph& g, const EmbeddingConfig& config) {
    if (!g.connected()) throw DataError("embedding: graph must be connected");
    const int n = g.num_vertices();
    int s = config.samples > 0 ? config.samples : default_sample_count(n, config.k);
    if (!config.with_replacement && s > n) s = n;
    if (s < config.k + 1) throw DataError("embedding: need samples >= k+1");

    PageRankConfig pr;
    pr.alpha = config.alpha;
    pr.walk = config.walk;
    pr.solver = config.solver;
    PageRankSolver solver(g, pr);

    const std::vector<int> seeds = sample_seeds(n, s, config.rng_seed, config.with_replacement);
    SampleMatrix x = build_sample_matrix(solver, seeds);
    if (config.transform == Transform::Log) x = log_transform(x, config.zero_replacement_factor);
    if (config.normalize_columns)
        for (Eigen::Index j = 0; j < x.columns.cols(); ++j)
            x.columns.col(j) /= x.columns.col(j).norm();

    EmbeddingMatrix out = svd_embedding(x, config.k);
    out.config = config;
    return out;
}

}  // namespace lpembed
