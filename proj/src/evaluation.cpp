#include "lpembed/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "lpembed/errors.hpp"
#include "lpembed/generators.hpp"
#include "lpembed/io.hpp"
#include "lpembed/rng.hpp"

namespace lpembed {

ApproxErrorReport approximation_error(const Graph& g, std::span<const double> u2,
                                      std::span<const double> z2, LaplacianKind kind) {
    const auto norm_sq = [](std::span<const double> x) {
        double a = 0.0;
        for (double v : x) a += v * v;
        return a;
    };
    const double zn = norm_sq(z2), un = norm_sq(u2);
    if (zn == 0.0 || un == 0.0) throw DataError("approximation_error: zero input vector");

    ApproxErrorReport out;
    out.laplacian = kind;
    out.s = laplacian_quadratic_form(g, z2, kind) / zn;
    out.p = laplacian_quadratic_form(g, u2, kind) / un;
    if (out.s <= 1e-13)
        throw NumericalError("approximation_error: baseline quotient is zero (trivial vector?)");
    out.error = (out.s - out.p) / out.s;
    return out;
}

double joint_correlation(std::span<const double> u, std::span<const double> z) {
    if (u.size() != z.size() || u.empty()) throw DataError("joint_correlation: length mismatch");
    const double n = static_cast<double>(u.size());
    double mu = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mz += z[i];
    }
    mu /= n;
    mz /= n;
    double suu = 0.0, szz = 0.0, suz = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - mu, dz = z[i] - mz;
        suu += du * du;
        szz += dz * dz;
        suz += du * dz;
    }
    if (suu == 0.0 || szz == 0.0) throw DataError("joint_correlation: zero-variance vector");
    return std::fabs(suz / std::sqrt(suu * szz));
}

double subspace_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& z) {
    if (u.rows() != z.rows() || u.cols() != z.cols())
        throw DataError("subspace_angle: shape mismatch");
    const auto orthonormalize = [](const Eigen::MatrixXd& m) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        Eigen::MatrixXd r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
        for (int j = 0; j < m.cols(); ++j)
            if (std::fabs(r(j, j)) < 1e-12 * std::sqrt(static_cast<double>(m.rows())))
                throw DataError("subspace_angle: rank-deficient input");
        Eigen::MatrixXd q = Eigen::MatrixXd::Identity(m.rows(), m.cols());
        return Eigen::MatrixXd(qr.householderQ() * q);
    };
    const Eigen::MatrixXd qu = orthonormalize(u), qz = orthonormalize(z);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qu.transpose() * qz);
    const double smin = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
    if (smin < 0.7) return std::acos(smin);
    // Small angles: acos of a cosine near 1 loses half the digits, so switch
    // to the sine form sin(theta_max) = || (I - Qu Qu^T) Qz ||_2.
    Eigen::MatrixXd residual = qz - qu * (qu.transpose() * qz);
    Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(residual);
    const double smax = std::clamp(ssvd.singularValues().maxCoeff(), 0.0, 1.0);
    return std::asin(smax);
}

VarianceStudyReport variance_study(const Graph& g, const EmbeddingConfig& config, int trials,
                                   const std::vector<double>& sample_fractions,
                                   LaplacianKind kind) {
    if (trials < 2) throw DataError("variance_study: need at least 2 trials");
    const int n = g.num_vertices();

    const SpectralKind skind = kind == LaplacianKind::Normalized
                                   ? SpectralKind::NormalizedLaplacian
                                   : SpectralKind::UnnormalizedLaplacian;
    SpectralBasis basis = spectral_embedding(g, 1, skind);
    const Eigen::VectorXd z2 = basis.vectors.col(1);

    PageRankConfig pr;
    pr.alpha = config.alpha;
    pr.walk = config.walk;
    pr.solver = config.solver;
    PageRankSolver solver(g, pr);

    VarianceStudyReport report;
    report.trials = trials;
    for (double frac : sample_fractions) {
        const int s = std::max(config.k + 1, static_cast<int>(std::lround(frac * n)));
        VarianceStudyRow row;
        row.sample_fraction = frac;
        row.samples = s;
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng = Rng::stream(config.rng_seed, static_cast<std::uint64_t>(trial));
            const std::vector<int> seeds = config.with_replacement
                                               ? rng.sample_with_replacement(n, s)
                                               : rng.sample_without_replacement(n, s);
            SampleMatrix x = build_sample_matrix(solver, seeds);
            if (config.transform == Transform::Log)
                x = log_transform(x, config.zero_replacement_factor);
            EmbeddingMatrix emb = svd_embedding(x, config.k);
            const auto rep = approximation_error(
                g, std::span<const double>(emb.z.col(0).data(), static_cast<std::size_t>(n)),
                std::span<const double>(z2.data(), static_cast<std::size_t>(n)), kind);
            row.errors.push_back(rep.error);
        }
        std::vector<double> sorted = row.errors;
        std::sort(sorted.begin(), sorted.end());
        row.min = sorted.front();
        row.max = sorted.back();
        row.median = trials % 2 ? sorted[trials / 2]
                                : 0.5 * (sorted[trials / 2 - 1] + sorted[trials / 2]);
        double mean = 0.0;
        for (double e : row.errors) mean += e;
        mean /= trials;
        for (double e : row.errors) row.variance += (e - mean) * (e - mean);
        row.variance /= trials - 1;
        report.rows.push_back(std::move(row));
    }
    return report;
}

ExpectationOracleReport expectation_oracle(const Graph& g, const std::vector<int>& powers) {
    const int n = g.num_vertices();
    if (n > 200) throw DataError("expectation_oracle: dense oracle limited to n <= 200");
    if (powers.empty()) throw DataError("expectation_oracle: need at least one power");
    const double d0 = g.degree(0);
    for (int u = 1; u < n; ++u)
        if (std::fabs(g.degree(u) - d0) > 1e-12 * std::max(1.0, d0))
            throw DataError("expectation_oracle: graph must be degree-regular");

    // Dense lazy walk; symmetric for regular graphs.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        w(u, u) = 0.5;
        auto nbrs = g.neighbors(u);
        auto wts = g.weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t) w(nbrs[t], u) += 0.5 * wts[t] / d0;
    }

    // Route 1: explicit powers by repeated multiplication, then the average
    // of column outer products over all seeds, which is (1/n) M M^T.
    Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(n, n);
    for (int kj : powers) {
        if (kj < 0) throw DataError("expectation_oracle: powers must be nonnegative");
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
        for (int t = 0; t < kj; ++t) m = w * m;
        for (int u = 0; u < n; ++u) e1 += (1.0 / n) * m.col(u) * m.col(u).transpose();
    }

    // Route 2: spectral closed form.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::MatrixXd q = es.eigenvectors();
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    for (int kj : powers)
        for (int i = 0; i < n; ++i) weights[i] += std::pow(lam[i], 2 * kj);
    Eigen::MatrixXd e2 = q * weights.asDiagonal() * q.transpose() / n;

    ExpectationOracleReport out;
    out.path_agreement = (e1 - e2).cwiseAbs().maxCoeff();

    // The oracle's eigenvalues are the weights/n, so walk eigenvalues with
    // (numerically) equal weight merge into one oracle eigenspace. Group by
    // weight, then compare each resolvable group's span against the matching
    // slice of the oracle's ascending eigendecomposition. Groups whose weight
    // is negligible relative to the top carry no usable information (the
    // powers have annihilated them) and are skipped.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eo(e1);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return weights[a] < weights[b]; });
    const double wmax = weights[order[n - 1]];
    const double group_tol = 1e-9 * std::max(1.0, wmax);

    std::vector<std::pair<int, int>> groups;  // [begin, end) positions in sorted order
    int begin = 0;
    for (int p = 1; p <= n; ++p) {
        if (p == n || weights[order[p]] - weights[order[p - 1]] > group_tol) {
            groups.emplace_back(begin, p);
            begin = p;
        }
    }
    out.eigenspace_count = static_cast<int>(groups.size());
    if (groups.size() == 1) {
        out.fully_degenerate = true;
        return out;
    }
    for (const auto& [lo, hi] : groups) {
        if (weights[order[lo]] < 1e-6 * wmax) continue;
        Eigen::MatrixXd qw(n, hi - lo), qe(n, hi - lo);
        for (int p = lo; p < hi; ++p) {
            qw.col(p - lo) = q.col(order[p]);
            qe.col(p - lo) = eo.eigenvectors().col(p);
        }
        out.max_eigenspace_angle = std::max(out.max_eigenspace_angle, subspace_angle(qw, qe));
    }
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Table1Report reproduce_table1(std::vector<Table1RowSpec> rows, const std::vector<double>& alphas,
                              const EmbeddingConfig& base_config, int repetitions) {
    Table1Report report;
    report.alphas = alphas;
    report.repetitions = repetitions;
    for (auto& row : rows) {
        const Graph& g = row.graph;
        if (!g.connected())
            throw DataError("table1: row " + row.name + " produced a disconnected graph");
        const int n = g.num_vertices();

        SpectralBasis zn = spectral_embedding(g, 1, SpectralKind::NormalizedLaplacian);
        SpectralBasis zu = spectral_embedding(g, 1, SpectralKind::UnnormalizedLaplacian);
        const Eigen::VectorXd z2n = zn.vectors.col(1), z2u = zu.vectors.col(1);

        for (double alpha : alphas) {
            PageRankConfig pr;
            pr.alpha = alpha;
            pr.walk = base_config.walk;
            PageRankSolver solver(g, pr);
            for (Transform t : {Transform::Identity, Transform::Log}) {
                std::vector<double> errs_n, errs_u;
                for (int rep = 0; rep < repetitions; ++rep) {
                    Rng rng = Rng::stream(base_config.rng_seed, static_cast<std::uint64_t>(rep));
                    const int s = base_config.samples > 0 ? base_config.samples
                                                          : default_sample_count(n, base_config.k);
                    const std::vector<int> seeds =
                        base_config.with_replacement ? rng.sample_with_replacement(n, s)
                                                     : rng.sample_without_replacement(n, std::min(s, n));
                    SampleMatrix x = build_sample_matrix(solver, seeds);
                    if (t == Transform::Log)
                        x = log_transform(x, base_config.zero_replacement_factor);
                    EmbeddingMatrix emb = svd_embedding(x, base_config.k);
                    std::span<const double> u2(emb.z.col(0).data(), static_cast<std::size_t>(n));
                    std::span<const double> zn_span(z2n.data(), static_cast<std::size_t>(n));
                    std::span<const double> zu_span(z2u.data(), static_cast<std::size_t>(n));
                    errs_n.push_back(
                        approximation_error(g, u2, zn_span, LaplacianKind::Normalized).error);
                    errs_u.push_back(
                        approximation_error(g, u2, zu_span, LaplacianKind::Unnormalized).error);
                }
                Table1Result res;
                res.row = row.name;
                res.alpha = alpha;
                res.transform = t;
                res.cell.error_normalized = median_of(errs_n);
                res.cell.error_unnormalized = median_of(errs_u);
                res.cell.reference = table1_reference(row.name, alpha, t);
                report.results.push_back(std::move(res));
            }
        }
    }
    return report;
}

std::vector<Table1RowSpec> default_table1_rows(std::uint64_t graph_seed) {
    std::vector<Table1RowSpec> rows;
    rows.push_back({"30-chain", chain(30)});
    rows.push_back({"3000-chain", chain(3000)});
    rows.push_back({"30-6nn", knn_geometric(30, 6, graph_seed)});
    rows.push_back({"3000-6nn", knn_geometric(3000, 6, graph_seed + 1)});
    Graph s1 = sbm(50, 60, 0.001, 0.005, graph_seed + 2);
    for (std::uint64_t retry = 0; !s1.connected() && retry < 16; ++retry)
        s1 = sbm(50, 60, 0.001, 0.005, graph_seed + 3 + retry);
    rows.push_back({"sbm(50,60,0.001,0.005)", std::move(s1)});
    Graph s2 = sbm(50, 60, 0.25, 0.005, graph_seed + 2);
    for (std::uint64_t retry = 0; !s2.connected() && retry < 16; ++retry)
        s2 = sbm(50, 60, 0.25, 0.005, graph_seed + 3 + retry);
    rows.push_back({"sbm(50,60,0.25,0.005)", std::move(s2)});
    return rows;
}

namespace {

// Accepts both row spellings ("chain30" and "30-chain", "sbm50-60-p-q" and
// "sbm(50,60,p,q)") and maps them onto one key.
std::string canonical_row(const std::string& row) {
    std::string digits, rest;
    if (row.rfind("chain", 0) == 0) return "chain:" + row.substr(5);
    if (row.rfind("knn", 0) == 0) return "knn:" + row.substr(3);
    auto dash = row.find("-chain");
    if (dash != std::string::npos) return "chain:" + row.substr(0, dash);
    dash = row.find("-6nn");
    if (dash != std::string::npos) return "knn:" + row.substr(0, dash);
    if (row.rfind("sbm", 0) == 0) {
        std::string body = row.substr(3);
        if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
        for (char& c : body)
            if (c == ',' || c == '-') c = ':';
        return "sbm:" + body;
    }
    return row;
}

}  // namespace

std::optional<double> table1_reference(const std::string& row, double alpha, Transform t) {
    struct Ref {
        const char* row;
        double raw_low, log_low, raw_high, log_high;  // percent at alpha 0.99 / 0.9999
    };
    static const Ref kRefs[] = {
        {"knn:30", 3.27, 0.06, 2.89, 0.05},
        {"knn:3000", 47.6, 0.37, 5.06, 2.88},
        {"knn:10000", 170.75, 2.13, 13.5, 1.76},
        {"chain:30", 26.88, 0.47, 28.42, 6.02},
        {"chain:3000", 2858.82, 1.06, 30.38, 0.75},
        {"sbm:50:60:0.001:0.005", 51.77, 15.22, 51.32, 67.25},
        {"sbm:1000:3:0.001:0.005", 47.35, 16.93, 45.78, 89.39},
        {"sbm:50:60:0.25:0.005", 17.88, 15.22, 90.13, 402.27},
        {"sbm:1000:3:0.25:0.001", 53.7, 1.04, 16.21, 15.73},
    };
    const bool low = alpha < 0.999;
    const std::string key = canonical_row(row);
    for (const auto& r : kRefs) {
        if (key == r.row) {
            if (t == Transform::Identity) return low ? r.raw_low : r.raw_high;
            return low ? r.log_low : r.log_high;
        }
    }
    return std::nullopt;
}

std::string format_table1(const Table1Report& report) {
    std::ostringstream out;
    out << "row, alpha, transform: error%% (normalized) | error%% (unnormalized) | reference%%\n";
    for (const auto& r : report.results) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-24s a=%-7g %-8s %12.2f | %12.2f | %s\n",
                      r.row.c_str(), r.alpha, r.transform == Transform::Log ? "log" : "raw",
                      100.0 * r.cell.error_normalized, 100.0 * r.cell.error_unnormalized,
                      r.cell.reference ? (std::to_string(*r.cell.reference)).c_str() : "-");
        out << buf;
    }
    return out.str();
}

std::string table1_csv(const Table1Report& report) {
    std::ostringstream out;
    out << "row,alpha,transform,error_normalized,error_unnormalized,reference_pct\n";
    for (const auto& r : report.results) {
        out << r.row << ',' << r.alpha << ','
            << (r.transform == Transform::Log ? "log" : "raw") << ','
            << io::format_double(r.cell.error_normalized) << ','
            << io::format_double(r.cell.error_unnormalized) << ',';
        if (r.cell.reference) out << *r.cell.reference;
        out << '\n';
    }
    return out.str();
}

}  // namespace lpembed
