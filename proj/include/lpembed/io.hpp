#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lpembed/graph.hpp"

namespace lpembed::io {

// Write-temp-then-rename so readers never observe partial files.
void atomic_write(const std::string& path, const std::string& content);

std::string format_double(double v);  // shortest round-trip decimal

void write_edge_list(const std::string& path, const Graph& g, int index_base = 0);

// JSON sidecar carrying coordinates, labels and generator provenance.
void write_graph_sidecar(const std::string& path, const Graph& g,
                         const std::map<std::string, std::string>& provenance);
bool read_graph_sidecar(const std::string& path, Graph& g);

// Embedding CSV: header `vertex,z1,...,zk`.
void write_embedding_csv(const std::string& path, const Eigen::MatrixXd& z);
Eigen::MatrixXd read_embedding_csv(const std::string& path);

// PageRank CSV: header `vertex,value`.
void write_vector_csv(const std::string& path, const std::vector<double>& values,
                      const std::string& value_header = "value");

std::vector<std::pair<int, std::string>> read_labels_csv(const std::string& path);

// Scatter plot of 2-d points colored by a scalar field or categorical labels.
struct SvgOptions {
    int size = 800;
    double point_radius = 2.0;
};
void write_svg_scatter(const std::string& path, const std::vector<double>& xs,
                       const std::vector<double>& ys, const std::vector<double>& color,
                       bool categorical, const SvgOptions& opts = {});

}  // namespace lpembed::io
