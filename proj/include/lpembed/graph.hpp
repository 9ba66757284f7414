#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpembed/kernels.hpp"

namespace lpembed {

struct Edge {
    int u;
    int v;
    double w;
};

struct Point {
    double x;
    double y;
};

// Undirected weighted graph in CSR form. Immutable after construction;
// safe for unrestricted concurrent reads. Self-loops are dropped at build
// time (laziness belongs to the walk operator, not the data) and duplicate
// edges merge by weight summation.
class Graph {
public:
    int num_vertices() const { return n_; }
    std::int64_t num_edges() const { return nnz_ / 2; }
    bool connected() const { return connected_; }
    int dropped_self_loops() const { return dropped_self_loops_; }

    const std::vector<double>& degrees() const { return degrees_; }
    double degree(int u) const { return degrees_[static_cast<std::size_t>(u)]; }
    double total_weight() const { return total_weight_; }
    bool has_isolated_vertex() const { return has_isolated_; }

    std::span<const std::int32_t> neighbors(int u) const {
        return {col_idx_.data() + row_ptr_[u], col_idx_.data() + row_ptr_[u + 1]};
    }
    std::span<const double> weights(int u) const {
        return {values_.data() + row_ptr_[u], values_.data() + row_ptr_[u + 1]};
    }

    kernels::CsrView adjacency_view() const {
        return {row_ptr_.data(), col_idx_.data(), values_.data(), static_cast<std::size_t>(n_)};
    }

    const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::int32_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

    // Optional metadata carried by generators and loaders.
    std::vector<Point> coords;
    std::vector<int> labels;

    friend Graph build_graph(const std::vector<Edge>& edges, int num_vertices);

private:
    int n_ = 0;
    std::int64_t nnz_ = 0;
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::int32_t> col_idx_;
    std::vector<double> values_;
    std::vector<double> degrees_;
    double total_weight_ = 0.0;
    bool connected_ = false;
    bool has_isolated_ = false;
    int dropped_self_loops_ = 0;
};

// Build from an undirected edge list. Vertex ids must lie in [0, num_vertices);
// pass num_vertices = 0 to infer max id + 1. Both orientations of the same
// pair merge into a single undirected edge whose weight is the sum.
Graph build_graph(const std::vector<Edge>& edges, int num_vertices = 0);

enum class WalkKind { Lazy, Standard, NormalizedAdjacency };

// Matrix-free view of the walk operators built on a graph:
//   lazy:                 x -> (x + A D^-1 x) / 2
//   standard:             x -> A D^-1 x
//   normalized adjacency: x -> D^-1/2 A D^-1/2 x
// The lazy and standard kinds are column-stochastic.
class WalkOperator {
public:
    WalkOperator(const Graph& g, WalkKind kind);

    const Graph& graph() const { return *graph_; }
    WalkKind kind() const { return kind_; }

    // Stateless application; concurrent calls do not interfere.
    void apply(const double* x, double* y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

private:
    const Graph* graph_;
    WalkKind kind_;
    std::vector<double> inv_degree_;       // 1/d
    std::vector<double> inv_sqrt_degree_;  // 1/sqrt(d)
};

std::vector<double> apply_walk(const WalkOperator& op, const std::vector<double>& x);

// (D^-1/2 A D^-1/2)^p e_seed by repeated application; p = 0 returns e_seed.
std::vector<double> normalized_adjacency_power(const Graph& g, int seed, int power);

enum class LaplacianKind { Normalized, Unnormalized };

// x^T L x with L = I - D^-1/2 A D^-1/2 (normalized) or L = D - A.
// Tiny negative round-off is clamped to zero.
double laplacian_quadratic_form(const Graph& g, std::span<const double> x,
                                LaplacianKind kind = LaplacianKind::Normalized);

}  // namespace lpembed
