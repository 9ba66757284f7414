#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lpembed/graph.hpp"
#include "lpembed/pagerank.hpp"

namespace lpembed {

enum class Transform { Log, Identity };

struct EmbeddingConfig {
    int k = 2;                            // embedding dimension
    int samples = 0;                      // 0 -> ceil((10+k) ln n)
    double alpha = 0.99;
    Transform transform = Transform::Log;
    std::uint64_t rng_seed = 0;
    double zero_replacement_factor = 0.1;  // in (0, 1)
    bool with_replacement = false;         // seed sampling mode
    bool normalize_columns = false;        // unit-norm columns before the SVD
    WalkKind walk = WalkKind::Lazy;
    SolverKind solver = SolverKind::Direct;
};

struct SampleMatrix {
    Eigen::MatrixXd columns;  // n x s, one diffusion vector per sampled seed
    std::vector<int> seeds;
    double alpha = 0.0;
    int replacement_count = 0;  // zero entries substituted before the log
};

struct EmbeddingMatrix {
    Eigen::MatrixXd z;                // n x k, orthonormal columns
    Eigen::VectorXd singular_values;  // full spectrum of the sample matrix
    std::vector<int> seeds;
    EmbeddingConfig config;
    int replacement_count = 0;
    bool degenerate = false;  // spectrum below tolerance within the first k+1
    std::string degenerate_note;
};

int default_sample_count(int n, int k);

// s seeds drawn uniformly from [0, n); distinct unless with_replacement.
std::vector<int> sample_seeds(int n, int s, std::uint64_t rng_seed,
                              bool with_replacement = false);

SampleMatrix build_sample_matrix(const PageRankSolver& solver, const std::vector<int>& seeds);

// Elementwise natural log; numerically-zero entries are first replaced by
// factor * (smallest positive entry). Throws on an all-zero column.
SampleMatrix log_transform(const SampleMatrix& x, double zero_replacement_factor);

// Left singular vectors 2..k+1 of y, ordered by decreasing singular value and
// sign-normalized (largest-magnitude entry positive, ties to lowest index).
EmbeddingMatrix svd_embedding(const SampleMatrix& y, int k);

// Full pipeline: sample seeds, solve diffusion columns, transform, SVD.
EmbeddingMatrix log_pagerank_embedding(const Graph& g, const EmbeddingConfig& config);

// Sign convention shared by embedding and spectral bases.
void sign_normalize_columns(Eigen::MatrixXd& m);

// Thin SVD with QR preconditioning for tall matrices.
void thin_svd(const Eigen::MatrixXd& m, Eigen::MatrixXd& u, Eigen::VectorXd& s);

}  // namespace lpembed
