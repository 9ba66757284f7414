#include "lpembed/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lpembed/errors.hpp"

namespace lpembed::io {

using nlohmann::json;

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp);
        out << content;
        if (!out) throw DataError("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw DataError("rename " + tmp + " -> " + path + ": " + ec.message());
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_edge_list(const std::string& path, const Graph& g, int index_base) {
    std::ostringstream out;
    for (int u = 0; u < g.num_vertices(); ++u) {
        auto nbrs = g.neighbors(u);
        auto wts = g.weights(u);
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            if (nbrs[t] < u) continue;  // each undirected edge once
            out << (u + index_base) << ' ' << (nbrs[t] + index_base) << ' '
                << format_double(wts[t]) << '\n';
        }
    }
    atomic_write(path, out.str());
}

void write_graph_sidecar(const std::string& path, const Graph& g,
                         const std::map<std::string, std::string>& provenance) {
    json j;
    j["n"] = g.num_vertices();
    j["m"] = g.num_edges();
    j["connected"] = g.connected();
    for (const auto& [k, v] : provenance) j[k] = v;
    if (!g.coords.empty()) {
        json pts = json::array();
        for (const auto& p : g.coords) pts.push_back({p.x, p.y});
        j["coords"] = std::move(pts);
    }
    if (!g.labels.empty()) j["labels"] = g.labels;
    atomic_write(path, j.dump(2) + "\n");
}

bool read_graph_sidecar(const std::string& path, Graph& g) {
    std::ifstream in(path);
    if (!in) return false;
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (j.contains("coords")) {
        g.coords.clear();
        for (const auto& p : j["coords"]) g.coords.push_back({p.at(0), p.at(1)});
        if (g.coords.size() != static_cast<std::size_t>(g.num_vertices()))
            throw DataError(path + ": coords length does not match vertex count");
    }
    if (j.contains("labels")) {
        g.labels = j["labels"].get<std::vector<int>>();
        if (g.labels.size() != static_cast<std::size_t>(g.num_vertices()))
            throw DataError(path + ": labels length does not match vertex count");
    }
    return true;
}

void write_embedding_csv(const std::string& path, const Eigen::MatrixXd& z) {
    std::ostringstream out;
    out << "vertex";
    for (int j = 0; j < z.cols(); ++j) out << ",z" << (j + 1);
    out << '\n';
    for (int i = 0; i < z.rows(); ++i) {
        out << i;
        for (int j = 0; j < z.cols(); ++j) out << ',' << format_double(z(i, j));
        out << '\n';
    }
    atomic_write(path, out.str());
}

Eigen::MatrixXd read_embedding_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    int cols = 0;
    for (char c : line) cols += (c == ',');
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // vertex id
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != cols)
            throw DataError(path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd z(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) z(static_cast<Eigen::Index>(i), j) = rows[i][j];
    return z;
}

void write_vector_csv(const std::string& path, const std::vector<double>& values,
                      const std::string& value_header) {
    std::ostringstream out;
    out << "vertex," << value_header << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << ',' << format_double(values[i]) << '\n';
    atomic_write(path, out.str());
}

std::vector<std::pair<int, std::string>> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected `vertex,label`");
        try {
            out.emplace_back(std::stoi(line.substr(0, comma)), line.substr(comma + 1));
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) + ": bad vertex id");
        }
    }
    return out;
}

namespace {

// Compact sequential colormap (dark blue -> green -> yellow).
const int kRampCount = 7;
const int kRamp[kRampCount][3] = {{68, 1, 84},   {70, 50, 127},  {54, 92, 141}, {39, 127, 142},
                                  {31, 161, 135}, {74, 194, 109}, {253, 231, 37}};

std::string ramp_color(double t) {
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    const double x = t * (kRampCount - 1);
    const int lo = std::min(kRampCount - 2, static_cast<int>(x));
    const double f = x - lo;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(kRamp[lo][0] + f * (kRamp[lo + 1][0] - kRamp[lo][0])),
                  static_cast<int>(kRamp[lo][1] + f * (kRamp[lo + 1][1] - kRamp[lo][1])),
                  static_cast<int>(kRamp[lo][2] + f * (kRamp[lo + 1][2] - kRamp[lo][2])));
    return buf;
}

const char* kPalette[] = {"#4363d8", "#e6194b", "#3cb44b", "#ffe119", "#f58231",
                          "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe",
                          "#008080", "#9a6324", "#800000", "#808000"};

}  // namespace

void write_svg_scatter(const std::string& path, const std::vector<double>& xs,
                       const std::vector<double>& ys, const std::vector<double>& color,
                       bool categorical, const SvgOptions& opts) {
    if (xs.size() != ys.size()) throw DataError("svg scatter: x/y length mismatch");
    const std::size_t n = xs.size();
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    const double xr = xmax > xmin ? xmax - xmin : 1.0;
    const double yr = ymax > ymin ? ymax - ymin : 1.0;
    double cmin = 0.0, cmax = 1.0;
    if (!color.empty() && !categorical) {
        cmin = 1e300;
        cmax = -1e300;
        for (double c : color) {
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        if (cmax <= cmin) cmax = cmin + 1.0;
    }
    const double margin = 20.0;
    const double span = opts.size - 2.0 * margin;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\""
        << opts.size << "\" viewBox=\"0 0 " << opts.size << ' ' << opts.size << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double px = margin + span * (xs[i] - xmin) / xr;
        const double py = opts.size - margin - span * (ys[i] - ymin) / yr;
        std::string fill = "#1f77b4";
        if (!color.empty()) {
            fill = categorical
                       ? kPalette[static_cast<std::size_t>(color[i]) % (sizeof(kPalette) / sizeof(kPalette[0]))]
                       : ramp_color((color[i] - cmin) / (cmax - cmin));
        }
        out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"" << opts.point_radius
            << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</svg>\n";
    atomic_write(path, out.str());
}

}  // namespace lpembed::io
