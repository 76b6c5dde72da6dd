#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "multinet/graph.hpp"
#include "multinet/tensor3.hpp"

namespace multinet {

enum class ReturnKind { Simple, Log };

struct PipelineConfig {
    double sh_threshold = 0.02;    ///< ownership fractions below this are discarded (kept when >=)
    double corr_threshold = 0.65;  ///< correlation edge iff rho strictly above this
    bool normalize_layers = true;  ///< divide each layer by its Frobenius norm
    bool zero_diagonal = true;
    bool restrict_to_union_scc = true;  ///< keep the largest SCC of the union network
    ReturnKind return_kind = ReturnKind::Simple;
    std::size_t rank = 30;
    double tolerance = 1e-6;
    std::size_t max_iter = 500;
    std::size_t restarts = 3;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless 0 <= sh_threshold < 1 and
    /// -1 < corr_threshold < 1.
    void validate() const;
};

/// Daily closing prices, dates x tickers; NaN marks a missing observation.
/// Dates must be strictly increasing, prices positive, and every ticker
/// needs at least two observations (one return).
class PriceTable {
public:
    PriceTable(std::vector<std::string> tickers, std::vector<std::string> dates,
               Eigen::MatrixXd closes);

    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::vector<std::string>& dates() const { return dates_; }
    const Eigen::MatrixXd& closes() const { return closes_; }

private:
    std::vector<std::string> tickers_;
    std::vector<std::string> dates_;
    Eigen::MatrixXd closes_;
};

struct LoadStats {
    std::size_t rows = 0;               ///< data rows parsed
    std::size_t edges_kept = 0;
    std::size_t dropped_threshold = 0;
    std::size_t dropped_diagonal = 0;
    std::size_t pairs_skipped = 0;      ///< correlation pairs with < 2 common returns
};

/// Directed ownership layer from CSV `src,dst,weight` with weights in [0,1]:
/// entry (i,j) is the fraction of j held by i. Fractions below
/// cfg.sh_threshold and self-holdings are discarded; duplicate pairs are an
/// error.
LayerGraph load_shareholding(const std::string& path, const PipelineConfig& cfg,
                             const std::vector<std::string>* roster = nullptr,
                             LoadStats* stats = nullptr);

/// Undirected board-interlock layer: weight (i,j) = number of shared
/// directors. Accepts either a `company,director` membership list (counts
/// computed by pairwise intersection) or a precomputed `src,dst,count` edge
/// list, detected by header.
LayerGraph load_board(const std::string& path, const std::vector<std::string>* roster = nullptr,
                      LoadStats* stats = nullptr);

/// Wide price CSV: header `date,<ticker>,...`, ISO-8601 dates, empty cell =
/// missing.
PriceTable load_prices(const std::string& path);

/// Binary undirected layer linking tickers whose return correlation exceeds
/// cfg.corr_threshold (strict). Returns are simple or log per cfg; Pearson
/// correlation runs over pairwise-complete return observations, and pairs
/// with fewer than two common observations get no edge (counted in stats).
LayerGraph correlation_layer(const PriceTable& prices, const PipelineConfig& cfg,
                             LoadStats* stats = nullptr);

struct AssembleReport {
    std::size_t nodes_before = 0;
    std::size_t nodes_after = 0;
    bool restricted = false;
    bool normalized = false;
    struct LayerInfo {
        std::string name;
        std::size_t edges = 0;           ///< nonzero off-diagonal entries after assembly
        double density = 0.0;            ///< edges / n(n-1)
        double frobenius_before = 0.0;   ///< slice norm before normalization
        LoadStats load;                  ///< loader drop statistics, when supplied
    };
    std::vector<LayerInfo> layers;

    std::string to_json() const;
};

struct Assembly {
    MultiNet net;
    Tensor3 tensor;
    AssembleReport report;
};

/// Alignment + preprocessing per the configured pipeline: unify labels by
/// string identity (absent nodes zero-padded), zero diagonals, optionally
/// restrict to the largest SCC of the union network, then optionally divide
/// each layer by its Frobenius norm, and stack into a tensor. Restriction
/// happens before normalization. per_layer_stats, when given, is carried
/// into the report (one entry per layer).
Assembly assemble(const std::vector<LayerGraph>& layers, const PipelineConfig& cfg,
                  const std::vector<LoadStats>* per_layer_stats = nullptr);

}  // namespace multinet
