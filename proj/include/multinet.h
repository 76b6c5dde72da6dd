/* multinet.h - C API for the multinet multilayer-network analysis library.
 *
 * All objects are opaque handles created by mn_* constructors and released
 * with the matching mn_*_free. Functions that can fail return mn_status;
 * on failure a thread-local message is available from mn_last_error().
 * Pointers returned by getters (labels, score arrays, report strings) are
 * owned by their handle and stay valid until that handle is freed. Handles
 * are immutable after construction and safe to share across threads.
 */

#ifndef MULTINET_H
#define MULTINET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mn_status {
    MN_OK = 0,
    MN_ERR_INVALID_ARGUMENT = 1, /* bad parameter, zero matrix/tensor, invalid config */
    MN_ERR_OUT_OF_RANGE = 2,     /* index outside the valid range */
    MN_ERR_DIMENSION = 3,        /* incompatible shapes */
    MN_ERR_PARSE = 4,            /* malformed input file */
    MN_ERR_IO = 5,               /* file unreadable/unwritable */
    MN_ERR_NUMERIC = 6,          /* numerically degenerate input */
    MN_ERR_UNKNOWN = 7
} mn_status;

const char* mn_status_name(mn_status status);

/* Message describing the most recent failure on this thread. */
const char* mn_last_error(void);

const char* mn_version(void);

typedef struct mn_layer mn_layer;
typedef struct mn_tensor mn_tensor;
typedef struct mn_hits mn_hits;
typedef struct mn_centrality mn_centrality;
typedef struct mn_cp mn_cp;
typedef struct mn_tucker mn_tucker;
typedef struct mn_assembly mn_assembly;

void mn_layer_free(mn_layer* layer);
void mn_tensor_free(mn_tensor* tensor);
void mn_hits_free(mn_hits* hits);
void mn_centrality_free(mn_centrality* centrality);
void mn_cp_free(mn_cp* model);
void mn_tucker_free(mn_tucker* model);
void mn_assembly_free(mn_assembly* assembly);
void mn_string_free(char* text);

/* ---- pipeline configuration ------------------------------------------- */

typedef struct mn_config {
    double sh_threshold;   /* default 0.02; ownership kept when >= */
    double corr_threshold; /* default 0.65; edge when strictly above */
    int normalize_layers;  /* default 1 */
    int zero_diagonal;     /* default 1 */
    int restrict_to_scc;   /* default 1: keep largest union-network SCC */
    int log_returns;       /* default 0: simple returns */
    size_t rank;           /* default 30 */
    double tolerance;      /* default 1e-8 */
    size_t max_iter;       /* default 200 */
    size_t restarts;       /* default 3 */
    uint64_t seed;         /* default 0 */
} mn_config;

void mn_config_init(mn_config* config);

/* ---- layers ------------------------------------------------------------ */

/* Dense construction; weights are row-major n x n, arc i->j at [i*n+j]. */
mn_status mn_layer_from_dense(const char* const* labels, size_t n, const double* weights,
                              int directed, const char* name, mn_layer** out);

/* Edge-list CSV `src,dst,weight`. roster_path may be NULL. */
mn_status mn_layer_read_edge_csv(const char* path, const char* roster_path, mn_layer** out);

mn_status mn_layer_load_shareholding(const char* path, const char* roster_path,
                                     double threshold, mn_layer** out);
mn_status mn_layer_load_board(const char* path, const char* roster_path, mn_layer** out);
mn_status mn_layer_load_correlation(const char* prices_csv_path, double threshold,
                                    int log_returns, mn_layer** out);

/* Mirrored copy of a directed layer; conflicting arc pairs are an error. */
mn_status mn_layer_symmetrized(const mn_layer* layer, mn_layer** out);

size_t mn_layer_node_count(const mn_layer* layer);
const char* mn_layer_label(const mn_layer* layer, size_t node);
const char* mn_layer_name(const mn_layer* layer);
int mn_layer_directed(const mn_layer* layer);
mn_status mn_layer_weight(const mn_layer* layer, size_t i, size_t j, double* out);

typedef enum mn_degree_mode { MN_DEGREE_IN = 0, MN_DEGREE_OUT = 1, MN_DEGREE_TOTAL = 2 } mn_degree_mode;
mn_status mn_layer_degree(const mn_layer* layer, size_t node, mn_degree_mode mode, size_t* out);

/* ---- assembly ----------------------------------------------------------- */

mn_status mn_assemble(const mn_layer* const* layers, size_t n_layers, const mn_config* config,
                      mn_assembly** out);

/* Borrowed reference, owned by the assembly. */
const mn_tensor* mn_assembly_tensor(const mn_assembly* assembly);
size_t mn_assembly_node_count(const mn_assembly* assembly);
const char* mn_assembly_label(const mn_assembly* assembly, size_t node);
size_t mn_assembly_layer_count(const mn_assembly* assembly);
const char* mn_assembly_layer_name(const mn_assembly* assembly, size_t k);
const char* mn_assembly_report_json(const mn_assembly* assembly);

/* ---- tensors ------------------------------------------------------------ */

/* data holds dim1*dim2*dim3 values with the first index fastest. */
mn_status mn_tensor_from_dense(size_t dim1, size_t dim2, size_t dim3, const double* data,
                               mn_tensor** out);
mn_status mn_tensor_dims(const mn_tensor* tensor, size_t* dim1, size_t* dim2, size_t* dim3);
mn_status mn_tensor_get(const mn_tensor* tensor, size_t i, size_t j, size_t k, double* out);
double mn_tensor_frobenius_norm(const mn_tensor* tensor);
mn_status mn_tensor_write_text(const mn_tensor* tensor, const char* path);
mn_status mn_tensor_read_text(const char* path, mn_tensor** out);

/* ---- spectral scores ----------------------------------------------------- */

mn_status mn_hits_compute(const mn_layer* layer, double tol, size_t max_iter, mn_hits** out);
const double* mn_hits_hubs(const mn_hits* hits, size_t* n);
const double* mn_hits_authorities(const mn_hits* hits, size_t* n);
size_t mn_hits_iterations(const mn_hits* hits);
int mn_hits_converged(const mn_hits* hits);
int mn_hits_gap_ok(const mn_hits* hits);

mn_status mn_eigencentrality_compute(const mn_layer* layer, double tol, size_t max_iter,
                                     mn_centrality** out);
const double* mn_centrality_scores(const mn_centrality* centrality, size_t* n);
double mn_centrality_eigenvalue(const mn_centrality* centrality);
size_t mn_centrality_iterations(const mn_centrality* centrality);
int mn_centrality_converged(const mn_centrality* centrality);

/* ---- decompositions ------------------------------------------------------ */

mn_status mn_cp_compute(const mn_tensor* tensor, size_t rank, double tol, size_t max_iter,
                        size_t restarts, uint64_t seed, mn_cp** out);

/* Rank-1 alternating contracted-product iteration; result has rank 1. */
mn_status mn_tophits_rank1(const mn_tensor* tensor, double tol, size_t max_iter, mn_cp** out);

size_t mn_cp_rank(const mn_cp* model);
double mn_cp_fit(const mn_cp* model);
size_t mn_cp_iterations(const mn_cp* model);
int mn_cp_converged(const mn_cp* model);
const double* mn_cp_lambdas(const mn_cp* model, size_t* rank);
/* Factor columns for 0-based component r (components sorted by weight). */
const double* mn_cp_hub_factor(const mn_cp* model, size_t r, size_t* n);
const double* mn_cp_authority_factor(const mn_cp* model, size_t r, size_t* n);
const double* mn_cp_topic_factor(const mn_cp* model, size_t r, size_t* n);
/* L1-normalized topic scores of component r, copied into out[0..cap). */
mn_status mn_cp_topics_l1(const mn_cp* model, size_t r, double* out, size_t cap);
size_t mn_cp_diagnostic_count(const mn_cp* model);
const char* mn_cp_diagnostic(const mn_cp* model, size_t index);

/* JSON round-trip; *out is released with mn_string_free. */
mn_status mn_cp_to_json(const mn_cp* model, char** out);
mn_status mn_cp_from_json(const char* text, mn_cp** out);

mn_status mn_corcondia(const mn_tensor* tensor, const mn_cp* model, double* out);

/* cp per rank with shared settings; corcondias[i] is NaN where the core
 * system is underdetermined (rank above some tensor extent). fits and
 * corcondias must hold n_ranks values. */
mn_status mn_rank_sweep(const mn_tensor* tensor, const size_t* ranks, size_t n_ranks,
                        double tol, size_t max_iter, size_t restarts, uint64_t seed,
                        double* fits, double* corcondias);

mn_status mn_tucker_compute(const mn_tensor* tensor, size_t dim1, size_t dim2, size_t dim3,
                            double tol, size_t max_iter, mn_tucker** out);
double mn_tucker_fit(const mn_tucker* model);
const mn_tensor* mn_tucker_core(const mn_tucker* model);
/* Factor matrix for mode 1, 2 or 3, column-major, extent x core_dim. */
const double* mn_tucker_factor(const mn_tucker* model, int mode, size_t* rows, size_t* cols);

#ifdef __cplusplus
}
#endif

#endif /* MULTINET_H */
