#include "multinet.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "multinet/decomp.hpp"
#include "multinet/errors.hpp"
#include "multinet/graph.hpp"
#include "multinet/io.hpp"
#include "multinet/pipeline.hpp"
#include "multinet/spectral.hpp"
#include "multinet/tensor3.hpp"
#include "multinet/version.hpp"

struct mn_layer {
    multinet::LayerGraph graph;
    multinet::LoadStats stats;
};
struct mn_tensor {
    multinet::Tensor3 tensor;
};
struct mn_hits {
    multinet::HitsResult result;
};
struct mn_centrality {
    multinet::CentralityResult result;
};
struct mn_cp {
    multinet::CpModel model;
};
struct mn_tucker {
    multinet::TuckerModel model;
    mn_tensor core;
};
struct mn_assembly {
    multinet::MultiNet net;
    mn_tensor tensor;
    std::string report_json;
};

namespace {

thread_local std::string g_last_error;

mn_status fail(mn_status status, const char* what) noexcept {
    try {
        g_last_error = what ? what : "";
    } catch (...) {
    }
    return status;
}

template <typename Fn>
mn_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return MN_OK;
    } catch (const multinet::DimensionError& e) {
        return fail(MN_ERR_DIMENSION, e.what());
    } catch (const std::out_of_range& e) {
        return fail(MN_ERR_OUT_OF_RANGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MN_ERR_INVALID_ARGUMENT, e.what());
    } catch (const multinet::ParseError& e) {
        return fail(MN_ERR_PARSE, e.what());
    } catch (const multinet::IoError& e) {
        return fail(MN_ERR_IO, e.what());
    } catch (const multinet::NumericError& e) {
        return fail(MN_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MN_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(MN_ERR_UNKNOWN, e.what());
    } catch (...) {
        return fail(MN_ERR_UNKNOWN, "unknown error");
    }
}

mn_status require(bool ok, const char* what) noexcept {
    return ok ? MN_OK : fail(MN_ERR_INVALID_ARGUMENT, what);
}

std::vector<std::string> maybe_roster(const char* path) {
    if (!path) return {};
    return multinet::read_roster(path);
}

multinet::PipelineConfig to_cxx_config(const mn_config& c) {
    multinet::PipelineConfig cfg;
    cfg.sh_threshold = c.sh_threshold;
    cfg.corr_threshold = c.corr_threshold;
    cfg.normalize_layers = c.normalize_layers != 0;
    cfg.zero_diagonal = c.zero_diagonal != 0;
    cfg.restrict_to_union_scc = c.restrict_to_scc != 0;
    cfg.return_kind = c.log_returns ? multinet::ReturnKind::Log : multinet::ReturnKind::Simple;
    cfg.rank = c.rank;
    cfg.tolerance = c.tolerance;
    cfg.max_iter = c.max_iter;
    cfg.restarts = c.restarts;
    cfg.seed = c.seed;
    return cfg;
}

}  // namespace

extern "C" {

const char* mn_status_name(mn_status status) {
    switch (status) {
        case MN_OK: return "ok";
        case MN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MN_ERR_OUT_OF_RANGE: return "index out of range";
        case MN_ERR_DIMENSION: return "dimension mismatch";
        case MN_ERR_PARSE: return "parse error";
        case MN_ERR_IO: return "io error";
        case MN_ERR_NUMERIC: return "numeric error";
        case MN_ERR_UNKNOWN: break;
    }
    return "unknown error";
}

const char* mn_last_error(void) { return g_last_error.c_str(); }

const char* mn_version(void) { return MULTINET_VERSION_STRING; }

void mn_layer_free(mn_layer* layer) { delete layer; }
void mn_tensor_free(mn_tensor* tensor) { delete tensor; }
void mn_hits_free(mn_hits* hits) { delete hits; }
void mn_centrality_free(mn_centrality* centrality) { delete centrality; }
void mn_cp_free(mn_cp* model) { delete model; }
void mn_tucker_free(mn_tucker* model) { delete model; }
void mn_assembly_free(mn_assembly* assembly) { delete assembly; }
void mn_string_free(char* text) { delete[] text; }

void mn_config_init(mn_config* config) {
    if (!config) return;
    const multinet::PipelineConfig d;
    config->sh_threshold = d.sh_threshold;
    config->corr_threshold = d.corr_threshold;
    config->normalize_layers = d.normalize_layers;
    config->zero_diagonal = d.zero_diagonal;
    config->restrict_to_scc = d.restrict_to_union_scc;
    config->log_returns = d.return_kind == multinet::ReturnKind::Log;
    config->rank = d.rank;
    config->tolerance = d.tolerance;
    config->max_iter = d.max_iter;
    config->restarts = d.restarts;
    config->seed = d.seed;
}

/* ---- layers ------------------------------------------------------------ */

mn_status mn_layer_from_dense(const char* const* labels, size_t n, const double* weights,
                              int directed, const char* name, mn_layer** out) {
    if (mn_status s = require(labels && weights && out && name, "null argument")) return s;
    return guarded([&] {
        std::vector<std::string> label_vec(labels, labels + n);
        Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = weights[i * n + j];
        *out = new mn_layer{multinet::LayerGraph(std::move(label_vec), std::move(w), name,
                                                 directed != 0)};
    });
}

mn_status mn_layer_read_edge_csv(const char* path, const char* roster_path, mn_layer** out) {
    if (mn_status s = require(path && out, "null argument")) return s;
    return guarded([&] {
        const auto roster = maybe_roster(roster_path);
        *out = new mn_layer{
            multinet::read_edge_csv(path, roster.empty() ? nullptr : &roster, "layer")};
    });
}

mn_status mn_layer_load_shareholding(const char* path, const char* roster_path, double threshold,
                                     mn_layer** out) {
    if (mn_status s = require(path && out, "null argument")) return s;
    return guarded([&] {
        multinet::PipelineConfig cfg;
        cfg.sh_threshold = threshold;
        const auto roster = maybe_roster(roster_path);
        multinet::LoadStats stats;
        *out = new mn_layer{
            multinet::load_shareholding(path, cfg, roster.empty() ? nullptr : &roster, &stats),
            stats};
    });
}

mn_status mn_layer_load_board(const char* path, const char* roster_path, mn_layer** out) {
    if (mn_status s = require(path && out, "null argument")) return s;
    return guarded([&] {
        const auto roster = maybe_roster(roster_path);
        multinet::LoadStats stats;
        *out = new mn_layer{multinet::load_board(path, roster.empty() ? nullptr : &roster, &stats),
                            stats};
    });
}

mn_status mn_layer_load_correlation(const char* prices_csv_path, double threshold,
                                    int log_returns, mn_layer** out) {
    if (mn_status s = require(prices_csv_path && out, "null argument")) return s;
    return guarded([&] {
        multinet::PipelineConfig cfg;
        cfg.corr_threshold = threshold;
        cfg.return_kind = log_returns ? multinet::ReturnKind::Log : multinet::ReturnKind::Simple;
        multinet::LoadStats stats;
        *out = new mn_layer{
            multinet::correlation_layer(multinet::load_prices(prices_csv_path), cfg, &stats),
            stats};
    });
}

mn_status mn_layer_symmetrized(const mn_layer* layer, mn_layer** out) {
    if (mn_status s = require(layer && out, "null argument")) return s;
    return guarded([&] { *out = new mn_layer{multinet::symmetrized(layer->graph)}; });
}

size_t mn_layer_node_count(const mn_layer* layer) {
    return layer ? static_cast<size_t>(layer->graph.node_count()) : 0;
}

const char* mn_layer_label(const mn_layer* layer, size_t node) {
    if (!layer || node >= layer->graph.labels().size()) return nullptr;
    return layer->graph.labels()[node].c_str();
}

const char* mn_layer_name(const mn_layer* layer) {
    return layer ? layer->graph.name().c_str() : nullptr;
}

int mn_layer_directed(const mn_layer* layer) { return layer && layer->graph.directed(); }

mn_status mn_layer_weight(const mn_layer* layer, size_t i, size_t j, double* out) {
    if (mn_status s = require(layer && out, "null argument")) return s;
    const auto n = static_cast<size_t>(layer->graph.node_count());
    if (i >= n || j >= n) return fail(MN_ERR_OUT_OF_RANGE, "node index outside graph");
    *out = layer->graph.weights()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return MN_OK;
}

mn_status mn_layer_degree(const mn_layer* layer, size_t node, mn_degree_mode mode, size_t* out) {
    if (mn_status s = require(layer && out, "null argument")) return s;
    return guarded([&] {
        multinet::DegreeMode m = multinet::DegreeMode::Total;
        if (mode == MN_DEGREE_IN) m = multinet::DegreeMode::In;
        else if (mode == MN_DEGREE_OUT) m = multinet::DegreeMode::Out;
        *out = multinet::degree(layer->graph, static_cast<Eigen::Index>(node), m);
    });
}

/* ---- assembly ----------------------------------------------------------- */

mn_status mn_assemble(const mn_layer* const* layers, size_t n_layers, const mn_config* config,
                      mn_assembly** out) {
    if (mn_status s = require(layers && config && out && n_layers > 0, "null argument")) return s;
    return guarded([&] {
        std::vector<multinet::LayerGraph> graphs;
        std::vector<multinet::LoadStats> stats;
        graphs.reserve(n_layers);
        stats.reserve(n_layers);
        for (size_t k = 0; k < n_layers; ++k) {
            if (!layers[k]) throw std::invalid_argument("null layer handle");
            graphs.push_back(layers[k]->graph);
            stats.push_back(layers[k]->stats);
        }
        multinet::Assembly assembly = multinet::assemble(graphs, to_cxx_config(*config), &stats);
        *out = new mn_assembly{std::move(assembly.net), mn_tensor{std::move(assembly.tensor)},
                               assembly.report.to_json()};
    });
}

const mn_tensor* mn_assembly_tensor(const mn_assembly* assembly) {
    return assembly ? &assembly->tensor : nullptr;
}

size_t mn_assembly_node_count(const mn_assembly* assembly) {
    return assembly ? static_cast<size_t>(assembly->net.node_count()) : 0;
}

const char* mn_assembly_label(const mn_assembly* assembly, size_t node) {
    if (!assembly || node >= assembly->net.labels().size()) return nullptr;
    return assembly->net.labels()[node].c_str();
}

size_t mn_assembly_layer_count(const mn_assembly* assembly) {
    return assembly ? assembly->net.layer_count() : 0;
}

const char* mn_assembly_layer_name(const mn_assembly* assembly, size_t k) {
    if (!assembly || k >= assembly->net.layer_count()) return nullptr;
    return assembly->net.layer(k).name().c_str();
}

const char* mn_assembly_report_json(const mn_assembly* assembly) {
    return assembly ? assembly->report_json.c_str() : nullptr;
}

/* ---- tensors ------------------------------------------------------------ */

mn_status mn_tensor_from_dense(size_t dim1, size_t dim2, size_t dim3, const double* data,
                               mn_tensor** out) {
    if (mn_status s = require(data && out, "null argument")) return s;
    return guarded([&] {
        multinet::Tensor3 t(static_cast<Eigen::Index>(dim1), static_cast<Eigen::Index>(dim2),
                            static_cast<Eigen::Index>(dim3));
        std::memcpy(t.data().data(), data, sizeof(double) * dim1 * dim2 * dim3);
        *out = new mn_tensor{std::move(t)};
    });
}

mn_status mn_tensor_dims(const mn_tensor* tensor, size_t* dim1, size_t* dim2, size_t* dim3) {
    if (mn_status s = require(tensor && dim1 && dim2 && dim3, "null argument")) return s;
    *dim1 = static_cast<size_t>(tensor->tensor.dim1());
    *dim2 = static_cast<size_t>(tensor->tensor.dim2());
    *dim3 = static_cast<size_t>(tensor->tensor.dim3());
    return MN_OK;
}

mn_status mn_tensor_get(const mn_tensor* tensor, size_t i, size_t j, size_t k, double* out) {
    if (mn_status s = require(tensor && out, "null argument")) return s;
    return guarded([&] {
        *out = tensor->tensor.at(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j),
                                 static_cast<Eigen::Index>(k));
    });
}

double mn_tensor_frobenius_norm(const mn_tensor* tensor) {
    return tensor ? multinet::frobenius_norm(tensor->tensor) : 0.0;
}

mn_status mn_tensor_write_text(const mn_tensor* tensor, const char* path) {
    if (mn_status s = require(tensor && path, "null argument")) return s;
    return guarded([&] { multinet::write_tensor_text(tensor->tensor, std::string(path)); });
}

mn_status mn_tensor_read_text(const char* path, mn_tensor** out) {
    if (mn_status s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new mn_tensor{multinet::read_tensor_text(std::string(path))}; });
}

/* ---- spectral ------------------------------------------------------------ */

mn_status mn_hits_compute(const mn_layer* layer, double tol, size_t max_iter, mn_hits** out) {
    if (mn_status s = require(layer && out, "null argument")) return s;
    return guarded([&] { *out = new mn_hits{multinet::hits(layer->graph, tol, max_iter)}; });
}

const double* mn_hits_hubs(const mn_hits* hits, size_t* n) {
    if (!hits) return nullptr;
    if (n) *n = static_cast<size_t>(hits->result.hubs.size());
    return hits->result.hubs.data();
}

const double* mn_hits_authorities(const mn_hits* hits, size_t* n) {
    if (!hits) return nullptr;
    if (n) *n = static_cast<size_t>(hits->result.authorities.size());
    return hits->result.authorities.data();
}

size_t mn_hits_iterations(const mn_hits* hits) { return hits ? hits->result.iterations : 0; }
int mn_hits_converged(const mn_hits* hits) { return hits && hits->result.converged; }
int mn_hits_gap_ok(const mn_hits* hits) { return hits && hits->result.gap_ok; }

mn_status mn_eigencentrality_compute(const mn_layer* layer, double tol, size_t max_iter,
                                     mn_centrality** out) {
    if (mn_status s = require(layer && out, "null argument")) return s;
    return guarded(
        [&] { *out = new mn_centrality{multinet::eigencentrality(layer->graph, tol, max_iter)}; });
}

const double* mn_centrality_scores(const mn_centrality* centrality, size_t* n) {
    if (!centrality) return nullptr;
    if (n) *n = static_cast<size_t>(centrality->result.scores.size());
    return centrality->result.scores.data();
}

double mn_centrality_eigenvalue(const mn_centrality* centrality) {
    return centrality ? centrality->result.eigenvalue : 0.0;
}

size_t mn_centrality_iterations(const mn_centrality* centrality) {
    return centrality ? centrality->result.iterations : 0;
}

int mn_centrality_converged(const mn_centrality* centrality) {
    return centrality && centrality->result.converged;
}

/* ---- decompositions ------------------------------------------------------ */

mn_status mn_cp_compute(const mn_tensor* tensor, size_t rank, double tol, size_t max_iter,
                        size_t restarts, uint64_t seed, mn_cp** out) {
    if (mn_status s = require(tensor && out, "null argument")) return s;
    return guarded([&] {
        multinet::CpOptions opts{tol, max_iter, restarts, seed};
        *out = new mn_cp{multinet::cp_als(tensor->tensor, rank, opts)};
    });
}

mn_status mn_tophits_rank1(const mn_tensor* tensor, double tol, size_t max_iter, mn_cp** out) {
    if (mn_status s = require(tensor && out, "null argument")) return s;
    return guarded([&] {
        const multinet::TophitsResult r = multinet::tophits_rank1(tensor->tensor, tol, max_iter);
        multinet::CpModel m;
        m.rank = 1;
        m.lambdas = Eigen::VectorXd::Constant(1, r.triplet.weight);
        m.hub_factors = r.triplet.hubs;
        m.authority_factors = r.triplet.authorities;
        m.topic_factors = r.triplet.topics;
        m.iterations = r.iterations;
        m.converged = r.converged;
        m.fit = multinet::model_fit(tensor->tensor, m);
        m.options.tol = tol;
        m.options.max_iter = max_iter;
        *out = new mn_cp{std::move(m)};
    });
}

size_t mn_cp_rank(const mn_cp* model) { return model ? model->model.rank : 0; }
double mn_cp_fit(const mn_cp* model) { return model ? model->model.fit : 0.0; }
size_t mn_cp_iterations(const mn_cp* model) { return model ? model->model.iterations : 0; }
int mn_cp_converged(const mn_cp* model) { return model && model->model.converged; }

const double* mn_cp_lambdas(const mn_cp* model, size_t* rank) {
    if (!model) return nullptr;
    if (rank) *rank = model->model.rank;
    return model->model.lambdas.data();
}

const double* mn_cp_hub_factor(const mn_cp* model, size_t r, size_t* n) {
    if (!model || r >= model->model.rank) return nullptr;
    if (n) *n = static_cast<size_t>(model->model.hub_factors.rows());
    return model->model.hub_factors.col(static_cast<Eigen::Index>(r)).data();
}

const double* mn_cp_authority_factor(const mn_cp* model, size_t r, size_t* n) {
    if (!model || r >= model->model.rank) return nullptr;
    if (n) *n = static_cast<size_t>(model->model.authority_factors.rows());
    return model->model.authority_factors.col(static_cast<Eigen::Index>(r)).data();
}

const double* mn_cp_topic_factor(const mn_cp* model, size_t r, size_t* n) {
    if (!model || r >= model->model.rank) return nullptr;
    if (n) *n = static_cast<size_t>(model->model.topic_factors.rows());
    return model->model.topic_factors.col(static_cast<Eigen::Index>(r)).data();
}

mn_status mn_cp_topics_l1(const mn_cp* model, size_t r, double* out, size_t cap) {
    if (mn_status s = require(model && out, "null argument")) return s;
    if (r >= model->model.rank) return fail(MN_ERR_OUT_OF_RANGE, "factor index exceeds rank");
    const auto k = static_cast<size_t>(model->model.topic_factors.rows());
    if (cap < k) return fail(MN_ERR_DIMENSION, "output buffer too small");
    multinet::Triplet tr;
    tr.topics = model->model.topic_factors.col(static_cast<Eigen::Index>(r));
    const Eigen::VectorXd l1 = tr.topics_l1();
    std::memcpy(out, l1.data(), sizeof(double) * k);
    return MN_OK;
}

size_t mn_cp_diagnostic_count(const mn_cp* model) {
    return model ? model->model.diagnostics.size() : 0;
}

const char* mn_cp_diagnostic(const mn_cp* model, size_t index) {
    if (!model || index >= model->model.diagnostics.size()) return nullptr;
    return model->model.diagnostics[index].c_str();
}

mn_status mn_cp_to_json(const mn_cp* model, char** out) {
    if (mn_status s = require(model && out, "null argument")) return s;
    return guarded([&] {
        const std::string text = multinet::cp_to_json(model->model);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

mn_status mn_cp_from_json(const char* text, mn_cp** out) {
    if (mn_status s = require(text && out, "null argument")) return s;
    return guarded([&] { *out = new mn_cp{multinet::cp_from_json(text)}; });
}

mn_status mn_corcondia(const mn_tensor* tensor, const mn_cp* model, double* out) {
    if (mn_status s = require(tensor && model && out, "null argument")) return s;
    return guarded([&] { *out = multinet::corcondia(tensor->tensor, model->model); });
}

mn_status mn_rank_sweep(const mn_tensor* tensor, const size_t* ranks, size_t n_ranks, double tol,
                        size_t max_iter, size_t restarts, uint64_t seed, double* fits,
                        double* corcondias) {
    if (mn_status s = require(tensor && ranks && fits && corcondias && n_ranks > 0,
                              "null argument"))
        return s;
    return guarded([&] {
        multinet::CpOptions opts{tol, max_iter, restarts, seed};
        const std::vector<std::size_t> rank_vec(ranks, ranks + n_ranks);
        const auto rows = multinet::fit_sweep(tensor->tensor, rank_vec, opts);
        for (size_t i = 0; i < rows.size(); ++i) {
            fits[i] = rows[i].fit;
            corcondias[i] = rows[i].corcondia;
        }
    });
}

mn_status mn_tucker_compute(const mn_tensor* tensor, size_t dim1, size_t dim2, size_t dim3,
                            double tol, size_t max_iter, mn_tucker** out) {
    if (mn_status s = require(tensor && out, "null argument")) return s;
    return guarded([&] {
        multinet::TuckerModel m = multinet::tucker(
            tensor->tensor,
            {static_cast<Eigen::Index>(dim1), static_cast<Eigen::Index>(dim2),
             static_cast<Eigen::Index>(dim3)},
            tol, max_iter);
        mn_tensor core{m.core};
        *out = new mn_tucker{std::move(m), std::move(core)};
    });
}

double mn_tucker_fit(const mn_tucker* model) { return model ? model->model.fit : 0.0; }

const mn_tensor* mn_tucker_core(const mn_tucker* model) { return model ? &model->core : nullptr; }

const double* mn_tucker_factor(const mn_tucker* model, int mode, size_t* rows, size_t* cols) {
    if (!model || mode < 1 || mode > 3) return nullptr;
    const Eigen::MatrixXd* f = mode == 1   ? &model->model.factors1
                               : mode == 2 ? &model->model.factors2
                                           : &model->model.factors3;
    if (rows) *rows = static_cast<size_t>(f->rows());
    if (cols) *cols = static_cast<size_t>(f->cols());
    return f->data();
}

}  // extern "C"
