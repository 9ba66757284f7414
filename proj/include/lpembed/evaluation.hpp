#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lpembed/embedding.hpp"
#include "lpembed/graph.hpp"
#include "lpembed/spectral.hpp"

namespace lpembed {

// Relative Rayleigh-quotient gap (s - p)/s between a spectral baseline
// vector and an embedding vector. Signed; negative when the embedding
// vector has the larger quotient.
struct ApproxErrorReport {
    double s = 0.0;      // baseline quotient
    double p = 0.0;      // embedding quotient
    double error = 0.0;  // (s - p)/s
    LaplacianKind laplacian = LaplacianKind::Normalized;
};

ApproxErrorReport approximation_error(const Graph& g, std::span<const double> u2,
                                      std::span<const double> z2,
                                      LaplacianKind kind = LaplacianKind::Normalized);

// |Pearson correlation| between two coordinate vectors.
double joint_correlation(std::span<const double> u, std::span<const double> z);

// Largest principal angle (radians) between the column spans.
double subspace_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& z);

struct VarianceStudyRow {
    double sample_fraction = 0.0;
    int samples = 0;
    double variance = 0.0;
    double max = 0.0;
    double min = 0.0;
    double median = 0.0;
    std::vector<double> errors;
};

struct VarianceStudyReport {
    std::vector<VarianceStudyRow> rows;
    int trials = 0;
};

// Re-runs the embedding with fresh seed sets per trial and reports the
// spread of the approximation error at each sample fraction.
VarianceStudyReport variance_study(const Graph& g, const EmbeddingConfig& config, int trials,
                                   const std::vector<double>& sample_fractions,
                                   LaplacianKind kind = LaplacianKind::Normalized);

struct ExpectationOracleReport {
    double path_agreement = 0.0;        // max |E1 - E2| between the two routes
    double max_eigenspace_angle = 0.0;  // largest principal angle across blocks
    int eigenspace_count = 0;
    bool fully_degenerate = false;      // single eigenvalue block (k = 0 case)
};

// Second-moment oracle for the sampled-power construction on regular graphs:
// averages the outer products of walk-power columns over every seed choice
// and checks the eigenspaces against those of the walk matrix. The closed
// form (1/n) Q (sum_j Lambda^(2 k_j)) Q^T is computed independently and the
// two routes must agree.
ExpectationOracleReport expectation_oracle(const Graph& g, const std::vector<int>& powers);

struct Table1Cell {
    double error_normalized = 0.0;    // signed, normalized-Laplacian metric
    double error_unnormalized = 0.0;  // signed, unnormalized ablation
    std::optional<double> reference;  // published value, when known (percent)
};

struct Table1RowSpec {
    std::string name;
    Graph graph;
};

struct Table1Result {
    std::string row;
    double alpha = 0.0;
    Transform transform = Transform::Log;
    Table1Cell cell;
};

struct Table1Report {
    std::vector<Table1Result> results;
    std::vector<double> alphas;
    int repetitions = 0;
};

// Medians over `repetitions` embedding runs for every (row, alpha, transform)
// combination, under both Laplacian conventions. Seed sampling follows
// base_config.with_replacement.
Table1Report reproduce_table1(std::vector<Table1RowSpec> rows, const std::vector<double>& alphas,
                              const EmbeddingConfig& base_config, int repetitions = 5);

// Built-in row set at desk scale with published reference values attached.
std::vector<Table1RowSpec> default_table1_rows(std::uint64_t graph_seed);
std::optional<double> table1_reference(const std::string& row, double alpha, Transform t);

std::string format_table1(const Table1Report& report);
std::string table1_csv(const Table1Report& report);

}  // namespace lpembed
