// Command-line front end: graph generation, embeddings, spectral baselines,
// quantitative comparisons and SVG plots, glued by CSV files on disk.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lpembed/embedding.hpp"
#include "lpembed/errors.hpp"
#include "lpembed/evaluation.hpp"
#include "lpembed/generators.hpp"
#include "lpembed/graph.hpp"
#include "lpembed/hypergraph.hpp"
#include "lpembed/io.hpp"
#include "lpembed/pagerank.hpp"
#include "lpembed/spectral.hpp"

namespace {

using nlohmann::json;
using namespace lpembed;

constexpr const char* kVersion = "0.1.0";

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void write_manifest(const std::string& out_prefix, const std::string& command, const json& params,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                    double wall_ms) {
    json j;
    j["tool_version"] = kVersion;
    j["command"] = command;
    j["parameters"] = params;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["wall_clock_ms"] = wall_ms;
    io::atomic_write(out_prefix + ".manifest.json", j.dump(2) + "\n");
}

Transform parse_transform(const std::string& s) {
    if (s == "log") return Transform::Log;
    if (s == "identity") return Transform::Identity;
    throw DataError("unknown transform: " + s);
}

WalkKind parse_walk(const std::string& s) {
    if (s == "lazy") return WalkKind::Lazy;
    if (s == "standard") return WalkKind::Standard;
    throw DataError("unknown walk: " + s);
}

SolverKind parse_solver(const std::string& s) {
    if (s == "direct") return SolverKind::Direct;
    if (s == "iterative") return SolverKind::Iterative;
    throw DataError("unknown solver: " + s);
}

SpectralKind parse_laplacian(const std::string& s) {
    if (s == "normalized") return SpectralKind::NormalizedLaplacian;
    if (s == "unnormalized") return SpectralKind::UnnormalizedLaplacian;
    throw DataError("unknown laplacian: " + s);
}

Graph row_graph(const std::string& token, std::uint64_t graph_seed) {
    if (token.rfind("chain", 0) == 0) return chain(std::stoi(token.substr(5)));
    if (token.rfind("knn", 0) == 0) return knn_geometric(std::stoi(token.substr(3)), 6, graph_seed);
    if (token.rfind("sbm", 0) == 0) {
        // sbm<npb>-<blocks>-<p>-<q>
        std::istringstream ss(token.substr(3));
        std::string a, b, c, d;
        if (std::getline(ss, a, '-') && std::getline(ss, b, '-') && std::getline(ss, c, '-') &&
            std::getline(ss, d)) {
            Graph g = sbm(std::stoi(a), std::stoi(b), std::stod(c), std::stod(d), graph_seed);
            for (std::uint64_t retry = 1; !g.connected() && retry <= 16; ++retry)
                g = sbm(std::stoi(a), std::stoi(b), std::stod(c), std::stod(d),
                        graph_seed + retry);
            return g;
        }
    }
    throw DataError("unknown table row token: " + token +
                    " (expected chainN, knnN or sbmNPB-BLOCKS-P-Q)");
}

json embedding_sidecar(const EmbeddingMatrix& emb) {
    json j;
    j["alpha"] = emb.config.alpha;
    j["k"] = emb.config.k;
    j["rng_seed"] = emb.config.rng_seed;
    j["seeds"] = emb.seeds;
    j["replacement_count"] = emb.replacement_count;
    std::vector<double> sv(emb.singular_values.data(),
                           emb.singular_values.data() + emb.singular_values.size());
    j["singular_values"] = sv;
    if (emb.degenerate) j["degenerate_spectrum"] = emb.degenerate_note;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"log-PageRank graph embedding toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // generate ------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "write a synthetic graph as an edge list");
    std::string family = "chain", gen_out = "graph.txt", on_disconnected = "retry";
    int gen_n = 30, gen_k = 6, gen_blocks = 2, index_base = 0;
    double gen_p = 0.25, gen_q = 0.005;
    std::uint64_t gen_seed = 1;
    gen->add_option("--family", family, "chain | knn | sbm")->required();
    gen->add_option("--n", gen_n, "vertex count (chain, knn) or per-block size (sbm)");
    gen->add_option("--k", gen_k, "neighbors per point (knn)");
    gen->add_option("--blocks", gen_blocks, "block count (sbm)");
    gen->add_option("--p", gen_p, "intra-block edge probability (sbm)");
    gen->add_option("--q", gen_q, "inter-block edge probability (sbm)");
    gen->add_option("--rng-seed", gen_seed, "generator seed");
    gen->add_option("--index-base", index_base, "0 or 1 indexed ids in the output file");
    gen->add_option("--on-disconnected", on_disconnected, "allow | error | retry (sbm only)");
    gen->add_option("--out", gen_out, "output edge-list path");

    // pagerank ------------------------------------------------------------
    auto* pr_cmd = app.add_subcommand("pagerank", "solve one seeded PageRank vector");
    std::string pr_graph, pr_out = "pagerank.csv", pr_walk = "lazy", pr_solver = "direct";
    int pr_seed_vertex = 0, pr_index_base = 0, pr_power = -1;
    double pr_alpha = 0.99;
    pr_cmd->add_option("graph", pr_graph, "edge-list file")->required();
    pr_cmd->add_option("--alpha", pr_alpha, "teleportation parameter");
    pr_cmd->add_option("--seed", pr_seed_vertex, "seed vertex");
    pr_cmd->add_option("--walk", pr_walk, "lazy | standard");
    pr_cmd->add_option("--solver", pr_solver, "direct | iterative");
    pr_cmd->add_option("--adjacency-power", pr_power,
                       "emit (D^-1/2 A D^-1/2)^p e_seed instead of PageRank");
    pr_cmd->add_option("--index-base", pr_index_base, "input file index base");
    pr_cmd->add_option("--out", pr_out, "output CSV");

    // embed ---------------------------------------------------------------
    auto* emb_cmd = app.add_subcommand("embed", "log-PageRank embedding of a graph");
    std::string emb_graph, emb_out = "embedding", emb_transform = "log", emb_walk = "lazy",
                emb_solver = "direct";
    EmbeddingConfig emb_cfg;
    int emb_index_base = 0;
    bool emb_with_replacement = false, emb_normalize = false;
    emb_cmd->add_option("graph", emb_graph, "edge-list file")->required();
    emb_cmd->add_option("--alpha", emb_cfg.alpha, "teleportation parameter");
    emb_cmd->add_option("--k", emb_cfg.k, "embedding dimension");
    emb_cmd->add_option("--samples", emb_cfg.samples, "sample count (0 = (10+k) ln n)");
    emb_cmd->add_option("--transform", emb_transform, "log | identity");
    emb_cmd->add_option("--walk", emb_walk, "lazy | standard");
    emb_cmd->add_option("--solver", emb_solver, "direct | iterative");
    emb_cmd->add_option("--rng-seed", emb_cfg.rng_seed, "seed sampling rng");
    emb_cmd->add_option("--zero-factor", emb_cfg.zero_replacement_factor,
                        "zero replacement factor in (0,1)");
    emb_cmd->add_flag("--with-replacement", emb_with_replacement, "sample seeds with replacement");
    emb_cmd->add_flag("--normalize-columns", emb_normalize, "unit-norm columns before the SVD");
    emb_cmd->add_option("--index-base", emb_index_base, "input file index base");
    emb_cmd->add_option("--out", emb_out, "output prefix (.csv, .json)");

    // spectral --------------------------------------------------------------
    auto* spec_cmd = app.add_subcommand("spectral", "Laplacian eigenvector embedding");
    std::string sp_graph, sp_out = "spectral", sp_lap = "normalized";
    int sp_k = 2, sp_index_base = 0;
    spec_cmd->add_option("graph", sp_graph, "edge-list file")->required();
    spec_cmd->add_option("--k", sp_k, "embedding dimension");
    spec_cmd->add_option("--laplacian", sp_lap, "normalized | unnormalized");
    spec_cmd->add_option("--index-base", sp_index_base, "input file index base");
    spec_cmd->add_option("--out", sp_out, "output prefix (.csv, .json)");

    // compare ---------------------------------------------------------------
    auto* cmp_cmd = app.add_subcommand("compare", "compare two embeddings on a graph");
    std::string cmp_u, cmp_z, cmp_graph, cmp_out, cmp_scatter;
    int cmp_index_base = 0;
    cmp_cmd->add_option("embedding", cmp_u, "embedding CSV under test")->required();
    cmp_cmd->add_option("baseline", cmp_z, "baseline embedding CSV")->required();
    cmp_cmd->add_option("graph", cmp_graph, "edge-list file")->required();
    cmp_cmd->add_option("--index-base", cmp_index_base, "input file index base");
    cmp_cmd->add_option("--out", cmp_out, "also write the report as CSV");
    cmp_cmd->add_option("--scatter", cmp_scatter,
                        "write per-column joint scatter data to <prefix>_zK.csv");

    // table1 ----------------------------------------------------------------
    auto* tab_cmd = app.add_subcommand("table1", "embedding-vs-spectral error table");
    std::string tab_rows = "chain30,chain3000,knn30,knn3000,sbm50-60-0.001-0.005,sbm50-60-0.25-0.005";
    std::string tab_alphas = "0.99,0.9999", tab_out;
    int tab_reps = 5;
    std::uint64_t tab_seed = 0, tab_graph_seed = 1;
    bool tab_without_replacement = false;
    tab_cmd->add_option("--rows", tab_rows, "comma-separated row tokens");
    tab_cmd->add_option("--alphas", tab_alphas, "comma-separated alpha values");
    tab_cmd->add_option("--reps", tab_reps, "repetitions per cell (median reported)");
    tab_cmd->add_option("--rng-seed", tab_seed, "embedding rng seed");
    tab_cmd->add_option("--graph-seed", tab_graph_seed, "generator seed for random rows");
    tab_cmd->add_flag("--without-replacement", tab_without_replacement,
                      "sample seeds without replacement");
    tab_cmd->add_option("--out", tab_out, "write CSV here as well");

    // variance ----------------------------------------------------------------
    auto* var_cmd = app.add_subcommand("variance", "error spread across seed-set draws");
    std::string var_graph, var_fractions = "0.01,0.05,0.1", var_out, var_lap = "unnormalized";
    double var_alpha = 0.99;
    int var_trials = 50, var_index_base = 0;
    std::uint64_t var_seed = 0;
    var_cmd->add_option("graph", var_graph, "edge-list file")->required();
    var_cmd->add_option("--alpha", var_alpha, "teleportation parameter");
    var_cmd->add_option("--trials", var_trials, "number of trials");
    var_cmd->add_option("--fractions", var_fractions, "comma-separated node fractions");
    var_cmd->add_option("--rng-seed", var_seed, "master rng seed");
    var_cmd->add_option("--laplacian", var_lap, "normalized | unnormalized");
    var_cmd->add_option("--index-base", var_index_base, "input file index base");
    var_cmd->add_option("--out", var_out, "write CSV here as well");

    // hypergraph ----------------------------------------------------------------
    auto* hyp_cmd = app.add_subcommand("hypergraph", "log-PageRank embedding of a hypergraph");
    std::string hyp_path, hyp_out = "hypergraph_embedding", hyp_expansion = "clique",
                hyp_labels, hyp_transform = "log";
    EmbeddingConfig hyp_cfg;
    HypergraphDiffusionConfig hyp_diff;
    int hyp_index_base = 0;
    hyp_cmd->add_option("hypergraph", hyp_path, "hyperedge-list file")->required();
    hyp_cmd->add_option("--expansion", hyp_expansion, "clique | star");
    hyp_cmd->add_option("--alpha", hyp_diff.alpha, "teleportation parameter");
    hyp_cmd->add_option("--kappa", hyp_diff.kappa, "diffusion sparsity (provenance)");
    hyp_cmd->add_option("--gamma", hyp_diff.gamma, "diffusion scale (provenance)");
    hyp_cmd->add_option("--rho", hyp_diff.rho, "diffusion penalty exponent (provenance)");
    hyp_cmd->add_option("--k", hyp_cfg.k, "embedding dimension");
    hyp_cmd->add_option("--samples", hyp_cfg.samples, "sample count (0 = auto)");
    hyp_cmd->add_option("--transform", hyp_transform, "log | identity");
    hyp_cmd->add_option("--rng-seed", hyp_cfg.rng_seed, "seed sampling rng");
    hyp_cmd->add_option("--labels", hyp_labels, "vertex,label CSV for the sidecar");
    hyp_cmd->add_option("--index-base", hyp_index_base, "input file index base");
    hyp_cmd->add_option("--out", hyp_out, "output prefix (.csv, .json)");

    // plot ----------------------------------------------------------------
    auto* plot_cmd = app.add_subcommand("plot", "SVG scatter of an embedding or field");
    std::string plot_emb, plot_graph, plot_labels, plot_field, plot_out = "plot.svg";
    bool plot_use_coords = false, plot_log_field = false;
    int plot_index_base = 0;
    plot_cmd->add_option("embedding", plot_emb, "embedding CSV (positions z1, z2)");
    plot_cmd->add_option("--graph", plot_graph, "edge-list path (for coordinate sidecar)");
    plot_cmd->add_flag("--use-coords", plot_use_coords, "position by stored coordinates");
    plot_cmd->add_option("--labels", plot_labels, "vertex,label CSV for categorical colors");
    plot_cmd->add_option("--field", plot_field, "vertex,value CSV for sequential colors");
    plot_cmd->add_flag("--log-field", plot_log_field,
                       "color by log of the field (zeros take the smallest positive value)");
    plot_cmd->add_option("--index-base", plot_index_base, "graph file index base");
    plot_cmd->add_option("--out", plot_out, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    Timer timer;

    if (gen->parsed()) {
        Graph g;
        json params{{"family", family}, {"rng_seed", gen_seed}, {"index_base", index_base}};
        std::map<std::string, std::string> prov{{"family", family},
                                                {"rng_seed", std::to_string(gen_seed)}};
        if (family == "chain") {
            g = chain(gen_n);
            params["n"] = gen_n;
            prov["n"] = std::to_string(gen_n);
        } else if (family == "knn") {
            g = knn_geometric(gen_n, gen_k, gen_seed);
            params["n"] = gen_n;
            params["k"] = gen_k;
            prov["n"] = std::to_string(gen_n);
            prov["k"] = std::to_string(gen_k);
        } else if (family == "sbm") {
            g = sbm(gen_n, gen_blocks, gen_p, gen_q, gen_seed);
            std::uint64_t seed = gen_seed;
            if (on_disconnected == "retry") {
                while (!g.connected()) g = sbm(gen_n, gen_blocks, gen_p, gen_q, ++seed);
                prov["rng_seed"] = std::to_string(seed);
                params["rng_seed"] = seed;
            } else if (on_disconnected == "error" && !g.connected()) {
                throw DataError("sbm output is disconnected (retry with another seed)");
            }
            params["n_per_block"] = gen_n;
            params["blocks"] = gen_blocks;
            params["p"] = gen_p;
            params["q"] = gen_q;
            prov["n_per_block"] = std::to_string(gen_n);
            prov["blocks"] = std::to_string(gen_blocks);
            prov["p"] = io::format_double(gen_p);
            prov["q"] = io::format_double(gen_q);
        } else {
            throw DataError("unknown family: " + family);
        }
        io::write_edge_list(gen_out, g, index_base);
        io::write_graph_sidecar(gen_out + ".json", g, prov);
        write_manifest(gen_out, "generate", params, {}, {gen_out, gen_out + ".json"}, timer.ms());
        std::cout << "wrote " << gen_out << " (n=" << g.num_vertices() << ", m=" << g.num_edges()
                  << ", connected=" << (g.connected() ? "yes" : "no") << ")\n";
        return 0;
    }

    if (pr_cmd->parsed()) {
        Graph g = load_point_graph(pr_graph, pr_index_base);
        if (pr_power >= 0) {
            std::vector<double> w = normalized_adjacency_power(g, pr_seed_vertex, pr_power);
            io::write_vector_csv(pr_out, w);
            write_manifest(pr_out, "pagerank",
                           json{{"adjacency_power", pr_power}, {"seed", pr_seed_vertex}},
                           {pr_graph}, {pr_out}, timer.ms());
            std::cout << "wrote " << pr_out << "\n";
            return 0;
        }
        PageRankConfig cfg;
        cfg.alpha = pr_alpha;
        cfg.walk = parse_walk(pr_walk);
        cfg.solver = parse_solver(pr_solver);
        PageRankSolver solver(g, cfg);
        PageRankVector x = solver.solve_seed(pr_seed_vertex);
        io::write_vector_csv(pr_out, x.values);
        write_manifest(pr_out, "pagerank",
                       json{{"alpha", pr_alpha},
                            {"seed", pr_seed_vertex},
                            {"walk", pr_walk},
                            {"solver", pr_solver}},
                       {pr_graph}, {pr_out}, timer.ms());
        std::cout << "wrote " << pr_out << " (residual " << x.residual << ")\n";
        return 0;
    }

    if (emb_cmd->parsed()) {
        Graph g = load_point_graph(emb_graph, emb_index_base);
        emb_cfg.transform = parse_transform(emb_transform);
        emb_cfg.walk = parse_walk(emb_walk);
        emb_cfg.solver = parse_solver(emb_solver);
        emb_cfg.with_replacement = emb_with_replacement;
        emb_cfg.normalize_columns = emb_normalize;
        EmbeddingMatrix emb = log_pagerank_embedding(g, emb_cfg);
        io::write_embedding_csv(emb_out + ".csv", emb.z);
        io::atomic_write(emb_out + ".json", embedding_sidecar(emb).dump(2) + "\n");
        write_manifest(emb_out, "embed",
                       json{{"alpha", emb_cfg.alpha},
                            {"k", emb_cfg.k},
                            {"samples", emb_cfg.samples},
                            {"transform", emb_transform},
                            {"walk", emb_walk},
                            {"solver", emb_solver},
                            {"rng_seed", emb_cfg.rng_seed},
                            {"zero_factor", emb_cfg.zero_replacement_factor},
                            {"with_replacement", emb_with_replacement},
                            {"normalize_columns", emb_normalize}},
                       {emb_graph}, {emb_out + ".csv", emb_out + ".json"}, timer.ms());
        std::cout << "wrote " << emb_out << ".csv (replacements " << emb.replacement_count
                  << ")\n";
        if (emb.degenerate) std::cout << "warning: " << emb.degenerate_note << "\n";
        return 0;
    }

    if (spec_cmd->parsed()) {
        Graph g = load_point_graph(sp_graph, sp_index_base);
        SpectralBasis basis = spectral_embedding(g, sp_k, parse_laplacian(sp_lap));
        io::write_embedding_csv(sp_out + ".csv", basis.embedding());
        json j;
        std::vector<double> ev(basis.eigenvalues.data(),
                               basis.eigenvalues.data() + basis.eigenvalues.size());
        j["eigenvalues"] = ev;
        j["laplacian"] = sp_lap;
        j["near_degenerate"] = basis.near_degenerate;
        io::atomic_write(sp_out + ".json", j.dump(2) + "\n");
        write_manifest(sp_out, "spectral", json{{"k", sp_k}, {"laplacian", sp_lap}}, {sp_graph},
                       {sp_out + ".csv", sp_out + ".json"}, timer.ms());
        std::cout << "wrote " << sp_out << ".csv\n";
        return 0;
    }

    if (cmp_cmd->parsed()) {
        Graph g = load_point_graph(cmp_graph, cmp_index_base);
        Eigen::MatrixXd u = io::read_embedding_csv(cmp_u);
        Eigen::MatrixXd z = io::read_embedding_csv(cmp_z);
        if (u.rows() != g.num_vertices() || z.rows() != g.num_vertices())
            throw DataError("compare: embedding row count does not match the graph");
        const int kc = static_cast<int>(std::min(u.cols(), z.cols()));
        const std::size_t n = static_cast<std::size_t>(g.num_vertices());
        std::ostringstream csv;
        csv << "column,error_normalized,error_unnormalized,abs_correlation\n";
        std::cout << "column  err(normalized)  err(unnormalized)  |corr|\n";
        for (int j = 0; j < kc; ++j) {
            std::span<const double> uj(u.col(j).data(), n), zj(z.col(j).data(), n);
            const double en = approximation_error(g, uj, zj, LaplacianKind::Normalized).error;
            const double eu = approximation_error(g, uj, zj, LaplacianKind::Unnormalized).error;
            const double corr = joint_correlation(uj, zj);
            std::printf("z%-6d %15.4f%% %17.4f%% %7.4f\n", j + 1, 100 * en, 100 * eu, corr);
            csv << 'z' << (j + 1) << ',' << io::format_double(en) << ',' << io::format_double(eu)
                << ',' << io::format_double(corr) << '\n';
            if (!cmp_scatter.empty()) {
                std::ostringstream sc;
                sc << "baseline,embedding\n";
                for (std::size_t i = 0; i < n; ++i)
                    sc << io::format_double(zj[i]) << ',' << io::format_double(uj[i]) << '\n';
                io::atomic_write(cmp_scatter + "_z" + std::to_string(j + 1) + ".csv", sc.str());
            }
        }
        const double angle = subspace_angle(u.leftCols(kc), z.leftCols(kc));
        std::printf("largest principal angle over %d columns: %.6f rad\n", kc, angle);
        csv << "subspace_angle_rad," << io::format_double(angle) << ",,\n";
        if (!cmp_out.empty()) {
            io::atomic_write(cmp_out, csv.str());
            write_manifest(cmp_out, "compare", json{{"columns", kc}}, {cmp_u, cmp_z, cmp_graph},
                           {cmp_out}, timer.ms());
        }
        return 0;
    }

    if (tab_cmd->parsed()) {
        std::vector<Table1RowSpec> rows;
        std::istringstream rs(tab_rows);
        std::string token;
        while (std::getline(rs, token, ','))
            if (!token.empty()) rows.push_back({token, row_graph(token, tab_graph_seed)});
        std::vector<double> alphas;
        std::istringstream as(tab_alphas);
        while (std::getline(as, token, ','))
            if (!token.empty()) alphas.push_back(std::stod(token));
        EmbeddingConfig cfg;
        cfg.rng_seed = tab_seed;
        cfg.with_replacement = !tab_without_replacement;
        Table1Report report = reproduce_table1(std::move(rows), alphas, cfg, tab_reps);
        std::cout << format_table1(report);
        if (!tab_out.empty()) {
            io::atomic_write(tab_out, table1_csv(report));
            write_manifest(tab_out, "table1",
                           json{{"rows", tab_rows},
                                {"alphas", tab_alphas},
                                {"reps", tab_reps},
                                {"rng_seed", tab_seed},
                                {"graph_seed", tab_graph_seed}},
                           {}, {tab_out}, timer.ms());
        }
        return 0;
    }

    if (var_cmd->parsed()) {
        Graph g = load_point_graph(var_graph, var_index_base);
        std::vector<double> fractions;
        std::istringstream fs(var_fractions);
        std::string token;
        while (std::getline(fs, token, ','))
            if (!token.empty()) fractions.push_back(std::stod(token));
        EmbeddingConfig cfg;
        cfg.alpha = var_alpha;
        cfg.rng_seed = var_seed;
        const LaplacianKind kind = parse_laplacian(var_lap) == SpectralKind::NormalizedLaplacian
                                       ? LaplacianKind::Normalized
                                       : LaplacianKind::Unnormalized;
        VarianceStudyReport report = variance_study(g, cfg, var_trials, fractions, kind);
        std::ostringstream csv;
        csv << "fraction,samples,variance,max,min,median\n";
        std::cout << "fraction  samples  variance      max%      min%   median%   spread(pp)\n";
        for (const auto& row : report.rows) {
            std::printf("%7.2f%% %8d %9.3g %9.3f %9.3f %9.3f %9.3f\n", 100 * row.sample_fraction,
                        row.samples, row.variance, 100 * row.max, 100 * row.min, 100 * row.median,
                        100 * (row.max - row.min));
            csv << io::format_double(row.sample_fraction) << ',' << row.samples << ','
                << io::format_double(row.variance) << ',' << io::format_double(row.max) << ','
                << io::format_double(row.min) << ',' << io::format_double(row.median) << '\n';
        }
        if (!var_out.empty()) {
            io::atomic_write(var_out, csv.str());
            write_manifest(var_out, "variance",
                           json{{"alpha", var_alpha},
                                {"trials", var_trials},
                                {"fractions", var_fractions},
                                {"rng_seed", var_seed},
                                {"laplacian", var_lap}},
                           {var_graph}, {var_out}, timer.ms());
        }
        return 0;
    }

    if (hyp_cmd->parsed()) {
        Hypergraph h = load_hypergraph(hyp_path, hyp_index_base);
        if (!hyp_labels.empty()) {
            h.labels.assign(static_cast<std::size_t>(h.n), 0);
            std::map<std::string, int> ids;
            for (const auto& [v, lab] : io::read_labels_csv(hyp_labels)) {
                if (v < 0 || v >= h.n) throw DataError("labels: vertex out of range");
                auto [it, inserted] = ids.emplace(lab, static_cast<int>(ids.size()));
                h.labels[static_cast<std::size_t>(v)] = it->second;
            }
        }
        hyp_diff.primitive =
            hyp_expansion == "star" ? ExpansionKind::Star : ExpansionKind::Clique;
        hyp_cfg.transform = parse_transform(hyp_transform);
        hyp_cfg.alpha = hyp_diff.alpha;
        EmbeddingMatrix emb = hypergraph_log_pr_embedding(h, hyp_cfg, hyp_diff);
        io::write_embedding_csv(hyp_out + ".csv", emb.z);
        json side = embedding_sidecar(emb);
        side["expansion"] = hyp_expansion;
        side["kappa"] = hyp_diff.kappa;
        side["gamma"] = hyp_diff.gamma;
        side["rho"] = hyp_diff.rho;
        side["dropped_singletons"] = h.dropped_singletons;
        if (!h.labels.empty()) side["labels"] = h.labels;
        io::atomic_write(hyp_out + ".json", side.dump(2) + "\n");
        write_manifest(hyp_out, "hypergraph",
                       json{{"expansion", hyp_expansion},
                            {"alpha", hyp_diff.alpha},
                            {"k", hyp_cfg.k},
                            {"rng_seed", hyp_cfg.rng_seed}},
                       {hyp_path}, {hyp_out + ".csv", hyp_out + ".json"}, timer.ms());
        std::cout << "wrote " << hyp_out << ".csv (n=" << h.n
                  << ", hyperedges=" << h.hyperedges.size() << ")\n";
        return 0;
    }

    if (plot_cmd->parsed()) {
        std::vector<double> xs, ys, color;
        bool categorical = false;
        if (plot_use_coords) {
            if (plot_graph.empty()) throw DataError("plot: --use-coords requires --graph");
            Graph g = load_point_graph(plot_graph, plot_index_base);
            if (g.coords.empty()) throw DataError("plot: graph has no stored coordinates");
            for (const auto& p : g.coords) {
                xs.push_back(p.x);
                ys.push_back(p.y);
            }
        } else {
            if (plot_emb.empty()) throw DataError("plot: need an embedding CSV or --use-coords");
            Eigen::MatrixXd z = io::read_embedding_csv(plot_emb);
            if (z.cols() < 2) throw DataError("plot: embedding needs at least 2 columns");
            for (int i = 0; i < z.rows(); ++i) {
                xs.push_back(z(i, 0));
                ys.push_back(z(i, 1));
            }
        }
        if (!plot_field.empty()) {
            std::ifstream in(plot_field);
            if (!in) throw DataError("cannot open " + plot_field);
            std::string line;
            std::getline(in, line);  // header
            color.assign(xs.size(), 0.0);
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto comma = line.find(',');
                const std::size_t v = std::stoul(line.substr(0, comma));
                if (v < color.size()) color[v] = std::stod(line.substr(comma + 1));
            }
            if (plot_log_field) {
                double min_pos = 0.0;
                for (double c : color)
                    if (c > 0.0 && (min_pos == 0.0 || c < min_pos)) min_pos = c;
                if (min_pos == 0.0) throw DataError("plot: --log-field needs a positive field");
                for (double& c : color) c = std::log(c > 0.0 ? c : 0.1 * min_pos);
            }
        } else if (!plot_labels.empty()) {
            categorical = true;
            color.assign(xs.size(), 0.0);
            std::map<std::string, int> ids;
            for (const auto& [v, lab] : io::read_labels_csv(plot_labels)) {
                auto [it, inserted] = ids.emplace(lab, static_cast<int>(ids.size()));
                if (v >= 0 && static_cast<std::size_t>(v) < color.size())
                    color[static_cast<std::size_t>(v)] = it->second;
            }
        }
        io::write_svg_scatter(plot_out, xs, ys, color, categorical);
        write_manifest(plot_out, "plot", json{{"use_coords", plot_use_coords}},
                       {plot_emb, plot_graph, plot_labels, plot_field}, {plot_out}, timer.ms());
        std::cout << "wrote " << plot_out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lpembed::DataError& e) {
        std::cerr << "error: data: " << e.what() << "\n";
        return 3;
    } catch (const lpembed::NumericalError& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
