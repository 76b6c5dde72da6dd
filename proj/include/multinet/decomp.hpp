#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multinet/tensor3.hpp"

namespace multinet {

struct CpOptions {
    double tol = 1e-6;            ///< stop when |fit change| <= tol between sweeps
    std::size_t max_iter = 500;   ///< ALS sweeps per run
    std::size_t restarts = 3;     ///< total runs; run 0 uses the spectral init
    std::uint64_t seed = 0;
};

/// Rank-R CP model: tensor ~ sum_r lambda_r u_r o v_r o w_r with unit-norm
/// factor columns and lambdas sorted descending. fit = 1 - |A - Ahat|_F/|A|_F,
/// recomputed from the full reconstruction at the end of the solve.
struct CpModel {
    std::size_t rank = 0;
    Eigen::VectorXd lambdas;
    Eigen::MatrixXd hub_factors;        ///< I x R (u columns)
    Eigen::MatrixXd authority_factors;  ///< J x R (v columns)
    Eigen::MatrixXd topic_factors;      ///< K x R (w columns)
    double fit = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<std::string> diagnostics;  ///< rank warnings, ridge events
    CpOptions options;
};

/// One hub/authority/topic factor. topics is the unit-L2 column; the
/// L1-normalized form used for reported layer scores is topics_l1().
struct Triplet {
    Eigen::VectorXd hubs;
    Eigen::VectorXd authorities;
    Eigen::VectorXd topics;
    double weight = 0.0;
    std::size_t factor_index = 0;  ///< 1-based; 1 is the dominant grouping

    Eigen::VectorXd topics_l1() const;
};

struct TophitsResult {
    Triplet triplet;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Tucker model: core tensor plus per-mode factor matrices with orthonormal
/// columns.
struct TuckerModel {
    Tensor3 core;
    Eigen::MatrixXd factors1, factors2, factors3;
    double fit = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Dominant rank-1 component by the alternating contracted-product iteration
///   h <- t xbar2 a xbar3 s,  a <- t xbar1 h xbar3 s,  s <- t xbar1 h xbar2 a,
/// each update followed by L2 normalization. The fixed point is the best
/// rank-1 approximation; its weight is the triple contraction. Throws on an
/// all-zero tensor; non-convergence is flagged.
TophitsResult tophits_rank1(const Tensor3& t, double tol = 1e-10, std::size_t max_iter = 1000);

/// Rank-R CP by alternating least squares. Each mode update solves the
/// normal equations against the Khatri-Rao of the other two factors, column
/// norms are absorbed into the lambdas, and the best of `restarts` runs by
/// fit is returned. Run 0 starts from the leading eigenvectors of each
/// unfolding's Gram matrix; later runs start from seeded nonnegative random
/// factors. Deterministic for a fixed seed. Near-singular normal equations
/// (condition above 1e12) get a ridge of 1e-12 * trace, recorded in
/// diagnostics.
CpModel cp_als(const Tensor3& t, std::size_t rank, const CpOptions& opts = {});

/// Single ALS run from caller-supplied initial factors (column counts give
/// the rank). Used for warm-started sweeps.
CpModel cp_als_with_init(const Tensor3& t, const Eigen::MatrixXd& u0, const Eigen::MatrixXd& v0,
                         const Eigen::MatrixXd& w0, const CpOptions& opts = {});

/// One triplet per factor in descending-lambda order (the model is already
/// sorted); factor_index is 1-based.
std::vector<Triplet> triplets(const CpModel& m);

struct Subgroup {
    std::vector<std::pair<Index, double>> hubs;         ///< (node, score), descending
    std::vector<std::pair<Index, double>> authorities;
};

/// Top-k nodes of factor r (1-based) by hub and authority score; ties broken
/// by node index. k is clamped to the node count.
Subgroup subgroup(const CpModel& m, std::size_t factor_index, std::size_t k);

/// Tucker via higher-order orthogonal iteration, initialized from each
/// unfolding's leading singular subspace.
TuckerModel tucker(const Tensor3& t, std::array<Index, 3> core_dims, double tol = 1e-8,
                   std::size_t max_iter = 100);

/// Core consistency diagnostic, in percent (<= 100). Computes the
/// least-squares Tucker core of t against the model's factor matrices (with
/// the lambdas absorbed into the hub factors) and compares it with the
/// superdiagonal identity core:  100 * (1 - sum (g_pqr - i_pqr)^2 / R).
/// Requires rank <= every tensor extent, else the core system is
/// underdetermined and a DimensionError is thrown.
double corcondia(const Tensor3& t, const CpModel& m);

struct RankSweepRow {
    std::size_t rank = 0;
    double fit = 0.0;
    double corcondia = 0.0;      ///< NaN when corcondia_defined is false
    bool corcondia_defined = false;
    bool converged = false;
};

/// cp_als per rank with shared settings; corcondia is reported where the
/// core system is solvable (rank <= min extent) and NaN otherwise. With
/// warm_start, each rank is additionally seeded from the previous solution
/// plus one fresh random component, which makes fit non-decreasing in rank.
std::vector<RankSweepRow> fit_sweep(const Tensor3& t, const std::vector<std::size_t>& ranks,
                                    const CpOptions& opts = {}, bool warm_start = false);

/// Dense evaluation of the model: sum_r lambda_r u_r o v_r o w_r.
Tensor3 reconstruct(const CpModel& m);

/// fit of m against t, recomputed from the dense reconstruction.
double model_fit(const Tensor3& t, const CpModel& m);

/// JSON round-trip of a model (rank, lambdas, row-major factors, fit,
/// iteration info, settings). Numeric values survive exactly.
std::string cp_to_json(const CpModel& m);
CpModel cp_from_json(const std::string& text);

}  // namespace multinet
