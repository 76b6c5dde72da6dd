// multinet - command-line front end for the multinet shared library.
//
// Subcommands: ingest, hits, eigencentrality, tophits, rank-sweep, subgroup.
// Exit codes: 0 success, 1 input error, 2 numerical non-convergence.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "multinet.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;

struct CliError {
    std::string message;
    int code = kExitInputError;
};

void check(mn_status status, const std::string& context) {
    if (status == MN_OK) return;
    throw CliError{context + ": " + mn_last_error(), kExitInputError};
}

template <typename T, void (*FreeFn)(T*)>
class Handle {
public:
    Handle() = default;
    ~Handle() { reset(); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& other) noexcept : ptr_(other.ptr_) { other.ptr_ = nullptr; }
    Handle& operator=(Handle&& other) noexcept {
        if (this != &other) {
            reset();
            ptr_ = other.ptr_;
            other.ptr_ = nullptr;
        }
        return *this;
    }
    T** out() {
        reset();
        return &ptr_;
    }
    T* get() const { return ptr_; }
    explicit operator bool() const { return ptr_ != nullptr; }

private:
    void reset() {
        if (ptr_) FreeFn(ptr_);
        ptr_ = nullptr;
    }
    T* ptr_ = nullptr;
};

using LayerHandle = Handle<mn_layer, mn_layer_free>;
using TensorHandle = Handle<mn_tensor, mn_tensor_free>;
using HitsHandle = Handle<mn_hits, mn_hits_free>;
using CentralityHandle = Handle<mn_centrality, mn_centrality_free>;
using CpHandle = Handle<mn_cp, mn_cp_free>;
using AssemblyHandle = Handle<mn_assembly, mn_assembly_free>;

std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{"cannot open '" + path + "' for digest"};
    std::uint64_t h = 1469598103934665603ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    return h;
}

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- shared options -------------------------------------------------------

struct CommonOptions {
    std::string out_dir = ".";
    std::string format = "table";
};

struct DecompOptions {
    double sh_threshold = 0.02;
    double corr_threshold = 0.65;
    bool no_normalize = false;
    bool no_scc_restrict = false;
    bool log_returns = false;
    std::size_t rank = 30;
    double tol = 1e-6;
    std::size_t max_iter = 500;
    std::size_t restarts = 3;
    std::uint64_t seed = 0;
    bool seed_given = false;

    mn_config to_config() const {
        mn_config cfg;
        mn_config_init(&cfg);
        cfg.sh_threshold = sh_threshold;
        cfg.corr_threshold = corr_threshold;
        cfg.normalize_layers = !no_normalize;
        cfg.restrict_to_scc = !no_scc_restrict;
        cfg.log_returns = log_returns;
        cfg.rank = rank;
        cfg.tolerance = tol;
        cfg.max_iter = max_iter;
        cfg.restarts = restarts;
        cfg.seed = seed;
        return cfg;
    }
};

void resolve_seed(DecompOptions& opts) {
    if (opts.seed_given) return;
    if (const char* env = std::getenv("MULTINET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') opts.seed = v;
    }
}

void add_decomp_flags(CLI::App* cmd, DecompOptions& opts, bool with_rank = true) {
    cmd->add_option("--sh-threshold", opts.sh_threshold,
                    "Ownership fraction kept when >= threshold");
    cmd->add_option("--corr-threshold", opts.corr_threshold,
                    "Correlation edge when strictly above threshold");
    cmd->add_flag("--no-normalize", opts.no_normalize, "Skip per-layer Frobenius normalization");
    cmd->add_flag("--no-scc-restrict", opts.no_scc_restrict,
                  "Keep all nodes instead of the largest union-network SCC");
    cmd->add_flag("--log-returns", opts.log_returns, "Use log instead of simple returns");
    if (with_rank) cmd->add_option("--rank", opts.rank, "CP rank");
    cmd->add_option("--tol", opts.tol, "Fit-change stop tolerance");
    cmd->add_option("--max-iter", opts.max_iter, "Maximum ALS sweeps");
    cmd->add_option("--restarts", opts.restarts, "ALS runs (run 0 uses the spectral init)");
    cmd->add_option("--seed", opts.seed, "Random seed (falls back to MULTINET_SEED)")
        ->trigger_on_parse()
        ->each([&opts](const std::string&) { opts.seed_given = true; });
}

void write_manifest(const std::string& command, const CommonOptions& common,
                    const std::vector<std::string>& inputs, const nlohmann::json& settings) {
    fs::create_directories(common.out_dir);
    nlohmann::json j;
    j["command"] = command;
    j["timestamp"] = iso_utc_now();
    j["library_version"] = mn_version();
    j["settings"] = settings;
    j["inputs"] = nlohmann::json::array();
    for (const auto& path : inputs) {
        char digest[24];
        std::snprintf(digest, sizeof digest, "%016" PRIx64, fnv1a64_file(path));
        j["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    }
    const std::string path = common.out_dir + "/" + command + "_manifest.json";
    std::ofstream out(path);
    if (!out) throw CliError{"cannot write manifest '" + path + "'"};
    out << j.dump(2) << '\n';
}

// ---- layer loading --------------------------------------------------------

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{"cannot open '" + path + "'"};
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Dispatch on the header: membership and count files go through the board
// loader, plain edge lists through the generic reader.
LayerHandle load_layer_auto(const std::string& path, const std::string& roster,
                            bool symmetrize) {
    const std::string header = first_line(path);
    const char* roster_arg = roster.empty() ? nullptr : roster.c_str();
    LayerHandle layer;
    if (header == "company,director" || header == "src,dst,count") {
        check(mn_layer_load_board(path.c_str(), roster_arg, layer.out()), path);
        return layer;
    }
    check(mn_layer_read_edge_csv(path.c_str(), roster_arg, layer.out()), path);
    if (symmetrize) {
        LayerHandle sym;
        check(mn_layer_symmetrized(layer.get(), sym.out()), path);
        return sym;
    }
    return layer;
}

// ---- dataset loading (tophits / rank-sweep / subgroup / ingest) -----------

struct DatasetOptions {
    std::string data_dir;
    std::string sh_file, board_file, prices_file, roster_file;
};

void add_dataset_flags(CLI::App* cmd, DatasetOptions& opts) {
    cmd->add_option("--data", opts.data_dir,
                    "Directory with shareholding.csv/board.csv/prices.csv or an ingested "
                    "tensor.txt + labels.txt");
    cmd->add_option("--sh", opts.sh_file, "Shareholding CSV (src,dst,weight)");
    cmd->add_option("--board", opts.board_file, "Board CSV (company,director or src,dst,count)");
    cmd->add_option("--prices", opts.prices_file, "Price CSV (date,<ticker>,...)");
    cmd->add_option("--roster", opts.roster_file, "Label roster file (one label per line)");
}

struct Dataset {
    AssemblyHandle assembly;
    TensorHandle owned_tensor;
    const mn_tensor* tensor = nullptr;
    std::vector<std::string> labels;
    std::vector<std::string> layer_names;
    std::vector<std::string> inputs;
    std::string report_json;
};

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{"cannot open '" + path + "'"};
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

Dataset load_dataset(const DatasetOptions& opts, const DecompOptions& decomp) {
    Dataset ds;

    const auto in_dir = [&](const char* name) {
        return opts.data_dir.empty() ? std::string() : opts.data_dir + "/" + name;
    };

    // Pre-assembled dataset: tensor + labels written by `ingest`.
    const std::string tensor_path = in_dir("tensor.txt");
    if (!tensor_path.empty() && fs::exists(tensor_path) && opts.sh_file.empty() &&
        opts.board_file.empty() && opts.prices_file.empty()) {
        check(mn_tensor_read_text(tensor_path.c_str(), ds.owned_tensor.out()), tensor_path);
        ds.tensor = ds.owned_tensor.get();
        ds.labels = read_lines(in_dir("labels.txt"));
        ds.inputs = {tensor_path, in_dir("labels.txt")};
        const std::string names_path = in_dir("layer_names.txt");
        if (fs::exists(names_path)) {
            ds.layer_names = read_lines(names_path);
            ds.inputs.push_back(names_path);
        } else {
            size_t d1, d2, d3;
            check(mn_tensor_dims(ds.tensor, &d1, &d2, &d3), "tensor dims");
            for (size_t k = 0; k < d3; ++k) ds.layer_names.push_back("layer" + std::to_string(k + 1));
        }
        return ds;
    }

    std::string sh = opts.sh_file, board = opts.board_file, prices = opts.prices_file;
    if (!opts.data_dir.empty()) {
        if (sh.empty() && fs::exists(in_dir("shareholding.csv"))) sh = in_dir("shareholding.csv");
        if (board.empty() && fs::exists(in_dir("board.csv"))) board = in_dir("board.csv");
        if (prices.empty() && fs::exists(in_dir("prices.csv"))) prices = in_dir("prices.csv");
    }
    if (sh.empty() && board.empty() && prices.empty())
        throw CliError{"no input layers: pass --data DIR or --sh/--board/--prices"};

    const char* roster = opts.roster_file.empty() ? nullptr : opts.roster_file.c_str();
    std::vector<LayerHandle> layers;
    if (!sh.empty()) {
        LayerHandle layer;
        check(mn_layer_load_shareholding(sh.c_str(), roster, decomp.sh_threshold, layer.out()), sh);
        layers.push_back(std::move(layer));
        ds.inputs.push_back(sh);
    }
    if (!board.empty()) {
        LayerHandle layer;
        check(mn_layer_load_board(board.c_str(), roster, layer.out()), board);
        layers.push_back(std::move(layer));
        ds.inputs.push_back(board);
    }
    if (!prices.empty()) {
        LayerHandle layer;
        check(mn_layer_load_correlation(prices.c_str(), decomp.corr_threshold,
                                        decomp.log_returns, layer.out()),
              prices);
        layers.push_back(std::move(layer));
        ds.inputs.push_back(prices);
    }
    if (!opts.roster_file.empty()) ds.inputs.push_back(opts.roster_file);

    std::vector<const mn_layer*> raw;
    raw.reserve(layers.size());
    for (const auto& l : layers) raw.push_back(l.get());
    const mn_config cfg = decomp.to_config();
    check(mn_assemble(raw.data(), raw.size(), &cfg, ds.assembly.out()), "assemble");

    ds.tensor = mn_assembly_tensor(ds.assembly.get());
    const size_t n = mn_assembly_node_count(ds.assembly.get());
    for (size_t i = 0; i < n; ++i) ds.labels.push_back(mn_assembly_label(ds.assembly.get(), i));
    const size_t k = mn_assembly_layer_count(ds.assembly.get());
    for (size_t i = 0; i < k; ++i)
        ds.layer_names.push_back(mn_assembly_layer_name(ds.assembly.get(), i));
    ds.report_json = mn_assembly_report_json(ds.assembly.get());
    return ds;
}

// ---- table rendering ------------------------------------------------------

struct Ranked {
    std::string label;
    double score;
};

std::vector<Ranked> rank_scores(const double* scores, const std::vector<std::string>& labels,
                                std::size_t top) {
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    std::vector<Ranked> out;
    for (std::size_t i = 0; i < order.size() && i < top; ++i)
        out.push_back({labels[order[i]], scores[order[i]]});
    return out;
}

std::size_t label_width(const std::vector<Ranked>& rows, std::size_t minimum) {
    std::size_t w = minimum;
    for (const auto& r : rows) w = std::max(w, r.label.size());
    return w;
}

void print_pair_table(std::ostream& out, const std::vector<Ranked>& left,
                      const std::vector<Ranked>& right, const std::string& left_title,
                      const std::string& right_title) {
    const std::size_t lw = label_width(left, 7);
    const std::size_t rw = label_width(right, 7);
    std::ostringstream header;
    header << std::left << std::setw(static_cast<int>(lw + 2)) << "company"
           << std::setw(14) << left_title << std::setw(static_cast<int>(rw + 2)) << "company"
           << right_title;
    out << header.str() << '\n';
    const std::size_t rows = std::max(left.size(), right.size());
    for (std::size_t i = 0; i < rows; ++i) {
        std::ostringstream line;
        line << std::left << std::setw(static_cast<int>(lw + 2))
             << (i < left.size() ? left[i].label : "")
             << std::setw(14) << (i < left.size() ? format_score(left[i].score) : "")
             << std::setw(static_cast<int>(rw + 2)) << (i < right.size() ? right[i].label : "")
             << (i < right.size() ? format_score(right[i].score) : "");
        std::string text = line.str();
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << '\n';
    }
}

nlohmann::json ranked_json(const std::vector<Ranked>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back({{"company", r.label}, {"score", r.score}});
    return arr;
}

// ---- subcommand bodies ------------------------------------------------------

int run_ingest(const DatasetOptions& data_opts, DecompOptions decomp, CommonOptions common) {
    resolve_seed(decomp);
    Dataset ds = load_dataset(data_opts, decomp);
    fs::create_directories(common.out_dir);

    const std::string tensor_path = common.out_dir + "/tensor.txt";
    check(mn_tensor_write_text(ds.tensor, tensor_path.c_str()), tensor_path);
    {
        std::ofstream out(common.out_dir + "/labels.txt");
        for (const auto& label : ds.labels) out << label << '\n';
        std::ofstream names(common.out_dir + "/layer_names.txt");
        for (const auto& name : ds.layer_names) names << name << '\n';
        if (!ds.report_json.empty()) {
            std::ofstream report(common.out_dir + "/report.json");
            report << ds.report_json << '\n';
        }
    }

    size_t d1, d2, d3;
    check(mn_tensor_dims(ds.tensor, &d1, &d2, &d3), "tensor dims");
    std::cout << "ingested " << d1 << "x" << d2 << "x" << d3 << " tensor ("
              << ds.layer_names.size() << " layers, " << ds.labels.size() << " nodes)\n";
    if (!ds.report_json.empty()) {
        const auto report = nlohmann::json::parse(ds.report_json);
        std::cout << "nodes before/after restriction: " << report["nodes_before"] << " -> "
                  << report["nodes_after"] << '\n';
        for (const auto& layer : report["layers"])
            std::cout << "layer " << layer["name"].get<std::string>() << ": "
                      << layer["edges"].get<std::size_t>() << " edges\n";
    }
    std::cout << "wrote " << tensor_path << '\n';

    nlohmann::json settings{{"sh_threshold", decomp.sh_threshold},
                            {"corr_threshold", decomp.corr_threshold},
                            {"normalize", !decomp.no_normalize},
                            {"scc_restrict", !decomp.no_scc_restrict},
                            {"log_returns", decomp.log_returns}};
    write_manifest("ingest", common, ds.inputs, settings);
    return kExitOk;
}

int run_hits(const std::string& layer_file, const std::string& roster, std::size_t top,
             double tol, std::size_t max_iter, CommonOptions common) {
    LayerHandle layer = load_layer_auto(layer_file, roster, /*symmetrize=*/false);
    HitsHandle hits;
    check(mn_hits_compute(layer.get(), tol, max_iter, hits.out()), layer_file);

    const size_t n = mn_layer_node_count(layer.get());
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back(mn_layer_label(layer.get(), i));
    size_t len = 0;
    const double* hub_scores = mn_hits_hubs(hits.get(), &len);
    const double* auth_scores = mn_hits_authorities(hits.get(), &len);
    const auto hubs = rank_scores(hub_scores, labels, top);
    const auto auths = rank_scores(auth_scores, labels, top);

    if (common.format == "json") {
        nlohmann::json j{{"command", "hits"},
                         {"converged", static_cast<bool>(mn_hits_converged(hits.get()))},
                         {"gap_ok", static_cast<bool>(mn_hits_gap_ok(hits.get()))},
                         {"iterations", mn_hits_iterations(hits.get())},
                         {"hubs", ranked_json(hubs)},
                         {"authorities", ranked_json(auths)}};
        std::cout << j.dump(2) << '\n';
    } else if (common.format == "tsv") {
        std::cout << "company\thub\tcompany\tauthority\n";
        for (std::size_t i = 0; i < std::max(hubs.size(), auths.size()); ++i) {
            std::cout << (i < hubs.size() ? hubs[i].label : "") << '\t'
                      << (i < hubs.size() ? format_score(hubs[i].score) : "") << '\t'
                      << (i < auths.size() ? auths[i].label : "") << '\t'
                      << (i < auths.size() ? format_score(auths[i].score) : "") << '\n';
        }
    } else {
        print_pair_table(std::cout, hubs, auths, "hub score", "authority score");
    }

    write_manifest("hits", common, {layer_file},
                   nlohmann::json{{"tol", tol}, {"max_iter", max_iter}, {"top", top}});
    if (!mn_hits_converged(hits.get())) {
        std::cerr << "warning: not converged after " << mn_hits_iterations(hits.get())
                  << " iterations\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int run_eigencentrality(const std::string& layer_file, const std::string& roster, bool symmetrize,
                        std::size_t top, double tol, std::size_t max_iter, CommonOptions common) {
    LayerHandle layer = load_layer_auto(layer_file, roster, symmetrize);
    CentralityHandle result;
    check(mn_eigencentrality_compute(layer.get(), tol, max_iter, result.out()), layer_file);

    const size_t n = mn_layer_node_count(layer.get());
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back(mn_layer_label(layer.get(), i));
    size_t len = 0;
    const double* scores = mn_centrality_scores(result.get(), &len);
    const auto ranked = rank_scores(scores, labels, top);

    std::vector<size_t> degrees;
    for (const auto& row : ranked) {
        const auto it = std::find(labels.begin(), labels.end(), row.label);
        size_t deg = 0;
        check(mn_layer_degree(layer.get(), static_cast<size_t>(it - labels.begin()),
                              MN_DEGREE_TOTAL, &deg),
              "degree");
        degrees.push_back(deg);
    }

    if (common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < ranked.size(); ++i)
            rows.push_back({{"company", ranked[i].label},
                            {"eigencentrality", ranked[i].score},
                            {"degree", degrees[i]}});
        nlohmann::json j{{"command", "eigencentrality"},
                         {"eigenvalue", mn_centrality_eigenvalue(result.get())},
                         {"converged", static_cast<bool>(mn_centrality_converged(result.get()))},
                         {"iterations", mn_centrality_iterations(result.get())},
                         {"rows", rows}};
        std::cout << j.dump(2) << '\n';
    } else if (common.format == "tsv") {
        std::cout << "company\teigencentrality\tdegree\n";
        for (std::size_t i = 0; i < ranked.size(); ++i)
            std::cout << ranked[i].label << '\t' << format_score(ranked[i].score) << '\t'
                      << degrees[i] << '\n';
    } else {
        std::size_t lw = 7;
        for (const auto& r : ranked) lw = std::max(lw, r.label.size());
        std::cout << std::left << std::setw(static_cast<int>(lw + 2)) << "company"
                  << std::setw(18) << "eigencentrality" << "degree\n";
        for (std::size_t i = 0; i < ranked.size(); ++i)
            std::cout << std::left << std::setw(static_cast<int>(lw + 2)) << ranked[i].label
                      << std::setw(18) << format_score(ranked[i].score) << degrees[i] << '\n';
    }

    write_manifest("eigencentrality", common, {layer_file},
                   nlohmann::json{{"tol", tol}, {"max_iter", max_iter}, {"top", top},
                                  {"symmetrize", symmetrize}});
    if (!mn_centrality_converged(result.get())) {
        std::cerr << "warning: not converged after " << mn_centrality_iterations(result.get())
                  << " iterations\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

nlohmann::json decomp_settings(const DecompOptions& d) {
    return {{"rank", d.rank},         {"tol", d.tol},
            {"max_iter", d.max_iter}, {"restarts", d.restarts},
            {"seed", d.seed},         {"sh_threshold", d.sh_threshold},
            {"corr_threshold", d.corr_threshold}, {"normalize", !d.no_normalize},
            {"scc_restrict", !d.no_scc_restrict}, {"log_returns", d.log_returns}};
}

void print_factor_tables(const Dataset& ds, const mn_cp* model, std::size_t factor,
                         std::size_t top, const std::string& format, const char* command) {
    const std::size_t r = factor - 1;
    size_t n = 0;
    const double* hub_col = mn_cp_hub_factor(model, r, &n);
    const double* auth_col = mn_cp_authority_factor(model, r, &n);
    if (!hub_col || !auth_col) throw CliError{"factor index exceeds rank"};

    size_t rank = 0;
    const double* lambdas = mn_cp_lambdas(model, &rank);
    std::vector<double> topics(ds.layer_names.size());
    check(mn_cp_topics_l1(model, r, topics.data(), topics.size()), "topic scores");

    const auto hubs = rank_scores(hub_col, ds.labels, top);
    const auto auths = rank_scores(auth_col, ds.labels, top);

    if (format == "json") {
        nlohmann::json topic_rows = nlohmann::json::array();
        size_t k = 0;
        const double* topics_l2 = mn_cp_topic_factor(model, r, &k);
        for (std::size_t i = 0; i < ds.layer_names.size(); ++i)
            topic_rows.push_back({{"layer", ds.layer_names[i]},
                                  {"score_l1", topics[i]},
                                  {"score_l2", topics_l2[i]}});
        nlohmann::json j{{"command", command},
                         {"factor", factor},
                         {"weight", lambdas[r]},
                         {"fit", mn_cp_fit(model)},
                         {"converged", static_cast<bool>(mn_cp_converged(model))},
                         {"iterations", mn_cp_iterations(model)},
                         {"topics", topic_rows},
                         {"hubs", ranked_json(hubs)},
                         {"authorities", ranked_json(auths)}};
        std::cout << j.dump(2) << '\n';
        return;
    }

    std::cout << "factor " << factor << " of " << rank << " (weight " << format_score(lambdas[r])
              << ", fit " << format_score(mn_cp_fit(model)) << ")\n";
    std::cout << "layer (topic) scores:";
    for (std::size_t i = 0; i < ds.layer_names.size(); ++i)
        std::cout << (i ? ", " : " ") << ds.layer_names[i] << " " << format_score(topics[i]);
    std::cout << '\n';
    print_pair_table(std::cout, hubs, auths, "hub score", "authority score");
}

int run_tophits(const DatasetOptions& data_opts, DecompOptions decomp, std::size_t factor,
                std::size_t top, CommonOptions common) {
    resolve_seed(decomp);
    Dataset ds = load_dataset(data_opts, decomp);
    CpHandle model;
    check(mn_cp_compute(ds.tensor, decomp.rank, decomp.tol, decomp.max_iter, decomp.restarts,
                        decomp.seed, model.out()),
          "cp decomposition");
    if (factor < 1 || factor > mn_cp_rank(model.get()))
        throw CliError{"factor index exceeds rank"};

    for (size_t i = 0; i < mn_cp_diagnostic_count(model.get()); ++i)
        std::cerr << "note: " << mn_cp_diagnostic(model.get(), i) << '\n';

    print_factor_tables(ds, model.get(), factor, top, common.format, "tophits");
    write_manifest("tophits", common, ds.inputs, decomp_settings(decomp));
    if (!mn_cp_converged(model.get())) {
        std::cerr << "warning: ALS not converged after " << mn_cp_iterations(model.get())
                  << " sweeps\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int run_subgroup(const DatasetOptions& data_opts, DecompOptions decomp, std::size_t factor,
                 std::size_t top, CommonOptions common) {
    resolve_seed(decomp);
    Dataset ds = load_dataset(data_opts, decomp);
    CpHandle model;
    check(mn_cp_compute(ds.tensor, decomp.rank, decomp.tol, decomp.max_iter, decomp.restarts,
                        decomp.seed, model.out()),
          "cp decomposition");
    if (factor < 1 || factor > mn_cp_rank(model.get()))
        throw CliError{"factor index exceeds rank"};

    print_factor_tables(ds, model.get(), factor, top, common.format, "subgroup");
    write_manifest("subgroup", common, ds.inputs, decomp_settings(decomp));
    if (!mn_cp_converged(model.get())) {
        std::cerr << "warning: ALS not converged after " << mn_cp_iterations(model.get())
                  << " sweeps\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

std::vector<std::size_t> parse_ranks(const std::string& spec) {
    std::vector<std::size_t> ranks;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const std::size_t lo = std::stoull(spec.substr(0, dots));
        const std::size_t hi = std::stoull(spec.substr(dots + 2));
        if (lo < 1 || hi < lo) throw CliError{"invalid rank range '" + spec + "'"};
        for (std::size_t r = lo; r <= hi; ++r) ranks.push_back(r);
        return ranks;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const std::size_t r = std::stoull(item);
        if (r < 1) throw CliError{"invalid rank '" + item + "'"};
        ranks.push_back(r);
    }
    if (ranks.empty()) throw CliError{"no ranks in '" + spec + "'"};
    return ranks;
}

int run_rank_sweep(const DatasetOptions& data_opts, DecompOptions decomp,
                   const std::string& ranks_spec, CommonOptions common) {
    resolve_seed(decomp);
    Dataset ds = load_dataset(data_opts, decomp);
    const auto ranks = parse_ranks(ranks_spec);
    std::vector<double> fits(ranks.size()), corcondias(ranks.size());
    check(mn_rank_sweep(ds.tensor, ranks.data(), ranks.size(), decomp.tol, decomp.max_iter,
                        decomp.restarts, decomp.seed, fits.data(), corcondias.data()),
          "rank sweep");

    const auto corcondia_text = [&](std::size_t i) -> std::string {
        if (std::isnan(corcondias[i])) return "n/a";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", corcondias[i]);
        return buf;
    };

    if (common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            nlohmann::json row{{"rank", ranks[i]}, {"fit", fits[i]}};
            if (std::isnan(corcondias[i])) row["corcondia"] = nullptr;
            else row["corcondia"] = corcondias[i];
            rows.push_back(std::move(row));
        }
        std::cout << nlohmann::json{{"command", "rank-sweep"}, {"rows", rows}}.dump(2) << '\n';
    } else if (common.format == "tsv") {
        std::cout << "rank\tfit\tcorcondia\n";
        for (std::size_t i = 0; i < ranks.size(); ++i)
            std::cout << ranks[i] << '\t' << format_score(fits[i]) << '\t' << corcondia_text(i)
                      << '\n';
    } else {
        std::cout << std::left << std::setw(6) << "rank" << std::setw(12) << "fit"
                  << "corcondia\n";
        for (std::size_t i = 0; i < ranks.size(); ++i)
            std::cout << std::left << std::setw(6) << ranks[i] << std::setw(12)
                      << format_score(fits[i]) << corcondia_text(i) << '\n';
    }

    nlohmann::json settings = decomp_settings(decomp);
    settings["ranks"] = ranks_spec;
    write_manifest("rank-sweep", common, ds.inputs, settings);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilayer network analysis: spectral scores and tensor decompositions"};
    app.require_subcommand(1);

    // ingest
    DatasetOptions ingest_data;
    DecompOptions ingest_decomp;
    CommonOptions ingest_common;
    auto* ingest = app.add_subcommand("ingest", "Assemble raw CSV layers into a tensor dataset");
    add_dataset_flags(ingest, ingest_data);
    add_decomp_flags(ingest, ingest_decomp, /*with_rank=*/false);
    ingest->add_option("--out", ingest_common.out_dir, "Output directory");

    // hits
    std::string hits_file, hits_roster;
    std::size_t hits_top = 10;
    double hits_tol = 1e-10;
    std::size_t hits_max_iter = 1000;
    CommonOptions hits_common;
    auto* hits_cmd = app.add_subcommand("hits", "Hub/authority scores of one layer");
    hits_cmd->add_option("layer-file", hits_file, "Layer CSV")->required();
    hits_cmd->add_option("--roster", hits_roster, "Label roster file");
    hits_cmd->add_option("--top", hits_top, "Rows to print");
    hits_cmd->add_option("--tol", hits_tol, "Convergence tolerance");
    hits_cmd->add_option("--max-iter", hits_max_iter, "Iteration cap");
    hits_cmd->add_option("--format", hits_common.format, "table, json or tsv");
    hits_cmd->add_option("--out", hits_common.out_dir, "Manifest directory");

    // eigencentrality
    std::string eig_file, eig_roster;
    bool eig_symmetrize = false;
    std::size_t eig_top = 10;
    double eig_tol = 1e-10;
    std::size_t eig_max_iter = 1000;
    CommonOptions eig_common;
    auto* eig_cmd =
        app.add_subcommand("eigencentrality", "Principal-eigenvector scores of an undirected layer");
    eig_cmd->add_option("layer-file", eig_file, "Layer CSV")->required();
    eig_cmd->add_option("--roster", eig_roster, "Label roster file");
    eig_cmd->add_flag("--symmetrize", eig_symmetrize, "Mirror a one-direction edge list");
    eig_cmd->add_option("--top", eig_top, "Rows to print");
    eig_cmd->add_option("--tol", eig_tol, "Convergence tolerance");
    eig_cmd->add_option("--max-iter", eig_max_iter, "Iteration cap");
    eig_cmd->add_option("--format", eig_common.format, "table, json or tsv");
    eig_cmd->add_option("--out", eig_common.out_dir, "Manifest directory");

    // tophits
    DatasetOptions tophits_data;
    DecompOptions tophits_decomp;
    CommonOptions tophits_common;
    std::size_t tophits_factor = 1, tophits_top = 10;
    auto* tophits_cmd =
        app.add_subcommand("tophits", "Hub/authority/topic triplets of the layer tensor");
    add_dataset_flags(tophits_cmd, tophits_data);
    add_decomp_flags(tophits_cmd, tophits_decomp);
    tophits_cmd->add_option("--factor", tophits_factor, "1-based factor index");
    tophits_cmd->add_option("--top", tophits_top, "Rows to print");
    tophits_cmd->add_option("--format", tophits_common.format, "table, json or tsv");
    tophits_cmd->add_option("--out", tophits_common.out_dir, "Manifest directory");

    // rank-sweep
    DatasetOptions sweep_data;
    DecompOptions sweep_decomp;
    CommonOptions sweep_common;
    std::string sweep_ranks = "1..8";
    auto* sweep_cmd = app.add_subcommand("rank-sweep", "Fit and CORCONDIA per CP rank");
    add_dataset_flags(sweep_cmd, sweep_data);
    add_decomp_flags(sweep_cmd, sweep_decomp, /*with_rank=*/false);
    sweep_cmd->add_option("--ranks", sweep_ranks, "Range a..b or comma list");
    sweep_cmd->add_option("--format", sweep_common.format, "table, json or tsv");
    sweep_cmd->add_option("--out", sweep_common.out_dir, "Manifest directory");

    // subgroup
    DatasetOptions sub_data;
    DecompOptions sub_decomp;
    CommonOptions sub_common;
    std::size_t sub_factor = 1, sub_top = 5;
    auto* sub_cmd = app.add_subcommand("subgroup", "Top nodes of one CP factor");
    add_dataset_flags(sub_cmd, sub_data);
    add_decomp_flags(sub_cmd, sub_decomp);
    sub_cmd->add_option("--factor", sub_factor, "1-based factor index")->required();
    sub_cmd->add_option("--top", sub_top, "Rows to print");
    sub_cmd->add_option("--format", sub_common.format, "table, json or tsv");
    sub_cmd->add_option("--out", sub_common.out_dir, "Manifest directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (ingest->parsed()) return run_ingest(ingest_data, ingest_decomp, ingest_common);
        if (hits_cmd->parsed())
            return run_hits(hits_file, hits_roster, hits_top, hits_tol, hits_max_iter,
                            hits_common);
        if (eig_cmd->parsed())
            return run_eigencentrality(eig_file, eig_roster, eig_symmetrize, eig_top, eig_tol,
                                       eig_max_iter, eig_common);
        if (tophits_cmd->parsed())
            return run_tophits(tophits_data, tophits_decomp, tophits_factor, tophits_top,
                               tophits_common);
        if (sweep_cmd->parsed())
            return run_rank_sweep(sweep_data, sweep_decomp, sweep_ranks, sweep_common);
        if (sub_cmd->parsed())
            return run_subgroup(sub_data, sub_decomp, sub_factor, sub_top, sub_common);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
