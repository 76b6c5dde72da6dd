#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "multinet/graph.hpp"

namespace multinet {

inline constexpr double kSpectralTol = 1e-10;
inline constexpr std::size_t kSpectralMaxIter = 1000;

/// Relative eigenvalue-gap threshold behind the gap_ok flag: the flag is set
/// when lambda1(A^T A) - lambda2(A^T A) > kGapRelThreshold * lambda1.
inline constexpr double kGapRelThreshold = 1e-8;

/// Hub and authority scores. Both vectors have unit Euclidean norm when the
/// iteration converged. gap_ok=false marks a (near-)degenerate top of the
/// A^T A spectrum: the scores then span a valid invariant subspace but are
/// not unique.
struct HitsResult {
    Eigen::VectorXd hubs;
    Eigen::VectorXd authorities;
    std::size_t iterations = 0;
    bool converged = false;
    bool gap_ok = false;
    double sigma = 0.0;  ///< dominant singular value estimate
};

struct CentralityResult {
    Eigen::VectorXd scores;  ///< unit norm when converged
    double eigenvalue = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Best rank-1 factors of a matrix: |A - sigma u v^T| minimal over rank-1,
/// with u, v unit vectors and sigma > 0.
struct Rank1Svd {
    double sigma = 0.0;
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    std::size_t iterations = 0;
    bool converged = false;
    bool gap_ok = false;
};

/// Principal-eigenvector centrality of an undirected nonnegative layer via
/// power iteration. The iteration runs on A + cI with c the maximum row sum;
/// the shift leaves the eigenvector unchanged and keeps |lambda_n + c| below
/// lambda_1 + c, so bipartite spectra cannot oscillate. Converged means both
/// the successive-iterate distance is <= tol and |A x - lambda x| <=
/// tol * |A|_F. Throws on non-symmetric or all-zero input; non-convergence
/// is reported through the flag.
CentralityResult eigencentrality(const LayerGraph& g, double tol = kSpectralTol,
                                 std::size_t max_iter = kSpectralMaxIter);

/// Alternating hub/authority iteration h <- A a, a <- A^T h with Euclidean
/// normalization after every matrix application, starting from the uniform
/// positive vector. At convergence the vectors are the principal left/right
/// singular vectors of A. Throws on all-zero input.
HitsResult hits(const LayerGraph& g, double tol = kSpectralTol,
                std::size_t max_iter = kSpectralMaxIter);

/// Same iteration on an arbitrary (not necessarily square or nonnegative)
/// matrix; sign-fixed so the largest-magnitude entry of u is positive.
Rank1Svd rank1_svd(const Eigen::MatrixXd& a, double tol = kSpectralTol,
                   std::size_t max_iter = kSpectralMaxIter);

}  // namespace multinet
