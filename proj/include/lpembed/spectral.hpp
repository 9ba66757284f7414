#pragma once

#include <vector>

#include <Eigen/Core>

#include "lpembed/graph.hpp"

namespace lpembed {

enum class SpectralKind { NormalizedLaplacian, UnnormalizedLaplacian, LazyWalk };

struct SpectralOptions {
    int dense_cutoff = 1500;   // dense decomposition at or below this size
    double residual_tol = 1e-9;
    int max_iterations = 2000;
};

// Eigenpairs of the chosen operator. Column 0 is the trivial eigenvector
// (exact nullvector for the Laplacians, stationary direction for the walk);
// columns 1..k hold the embedding vectors. Laplacian kinds are ordered by
// ascending eigenvalue, the walk kind by descending.
struct SpectralBasis {
    Eigen::VectorXd eigenvalues;   // length k+1
    Eigen::MatrixXd vectors;       // n x (k+1)
    SpectralKind which = SpectralKind::NormalizedLaplacian;
    std::vector<int> near_degenerate;  // indices i with |lambda_i - lambda_{i+1}| < 1e-10

    Eigen::MatrixXd embedding() const { return vectors.rightCols(vectors.cols() - 1); }
};

// k eigenvectors of the Laplacian with smallest nonzero eigenvalues.
SpectralBasis spectral_embedding(const Graph& g, int k,
                                 SpectralKind kind = SpectralKind::NormalizedLaplacian,
                                 const SpectralOptions& opts = {});

// Top-k nontrivial eigenpairs of the lazy walk (I + A D^-1)/2 along with the
// stationary direction. Eigenvectors are the walk's right eigenvectors,
// unit-normalized; they are mutually orthogonal exactly when the graph is
// regular (they are D^1/2-scaled Laplacian eigenvectors in general).
SpectralBasis lazy_walk_eigenpairs(const Graph& g, int k, const SpectralOptions& opts = {});

}  // namespace lpembed
