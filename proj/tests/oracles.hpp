// Test-only oracles: brute-force and dense-solver reference implementations
// kept independent of the library code paths they check.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <vector>

#include "multinet/decomp.hpp"
#include "multinet/graph.hpp"
#include "multinet/rng.hpp"
#include "multinet/tensor3.hpp"

namespace oracles {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Floyd-Warshall transitive closure; closure(i,j) = 1 iff a directed path
// i -> j exists (i reaches itself trivially).
inline Eigen::MatrixXi reachability_closure(const MatrixXd& w) {
    const Index n = w.rows();
    Eigen::MatrixXi reach = Eigen::MatrixXi::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) reach(i, j) = (i == j || w(i, j) != 0.0) ? 1 : 0;
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (reach(i, k) && reach(k, j)) reach(i, j) = 1;
    return reach;
}

// Mutual-reachability equivalence classes, as sets of node sets.
inline std::set<std::set<Index>> scc_by_reachability(const MatrixXd& w) {
    const auto reach = reachability_closure(w);
    const Index n = w.rows();
    std::set<std::set<Index>> classes;
    for (Index i = 0; i < n; ++i) {
        std::set<Index> cls;
        for (Index j = 0; j < n; ++j)
            if (reach(i, j) && reach(j, i)) cls.insert(j);
        classes.insert(std::move(cls));
    }
    return classes;
}

inline double naive_frobenius(const multinet::Tensor3& t) {
    double sum = 0.0;
    for (Index i = 0; i < t.dim1(); ++i)
        for (Index j = 0; j < t.dim2(); ++j)
            for (Index k = 0; k < t.dim3(); ++k) sum += t(i, j, k) * t(i, j, k);
    return std::sqrt(sum);
}

inline VectorXd naive_contract2(const multinet::Tensor3& t, const VectorXd& a, const VectorXd& s) {
    VectorXd out = VectorXd::Zero(t.dim1());
    for (Index i = 0; i < t.dim1(); ++i)
        for (Index j = 0; j < t.dim2(); ++j)
            for (Index k = 0; k < t.dim3(); ++k) out[i] += t(i, j, k) * a[j] * s[k];
    return out;
}

inline VectorXd naive_contract1(const multinet::Tensor3& t, const VectorXd& h, const VectorXd& s) {
    VectorXd out = VectorXd::Zero(t.dim2());
    for (Index i = 0; i < t.dim1(); ++i)
        for (Index j = 0; j < t.dim2(); ++j)
            for (Index k = 0; k < t.dim3(); ++k) out[j] += t(i, j, k) * h[i] * s[k];
    return out;
}

inline VectorXd naive_contract12(const multinet::Tensor3& t, const VectorXd& h, const VectorXd& a) {
    VectorXd out = VectorXd::Zero(t.dim3());
    for (Index i = 0; i < t.dim1(); ++i)
        for (Index j = 0; j < t.dim2(); ++j)
            for (Index k = 0; k < t.dim3(); ++k) out[k] += t(i, j, k) * h[i] * a[j];
    return out;
}

// Independent rank-one construction (loop, not the library's outer3).
inline multinet::Tensor3 naive_rank1(double weight, const VectorXd& u, const VectorXd& v,
                                     const VectorXd& w) {
    multinet::Tensor3 t(u.size(), v.size(), w.size());
    for (Index i = 0; i < u.size(); ++i)
        for (Index j = 0; j < v.size(); ++j)
            for (Index k = 0; k < w.size(); ++k) t(i, j, k) = weight * u[i] * v[j] * w[k];
    return t;
}

inline void add_rank1(multinet::Tensor3& t, double weight, const VectorXd& u, const VectorXd& v,
                      const VectorXd& w) {
    for (Index i = 0; i < u.size(); ++i)
        for (Index j = 0; j < v.size(); ++j)
            for (Index k = 0; k < w.size(); ++k) t(i, j, k) += weight * u[i] * v[j] * w[k];
}

struct DenseSvd {
    double sigma1 = 0.0, sigma2 = 0.0;
    VectorXd u1, v1;
};

inline DenseSvd dense_svd(const MatrixXd& a) {
    Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    DenseSvd out;
    out.sigma1 = svd.singularValues()[0];
    out.sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
    out.u1 = svd.matrixU().col(0);
    out.v1 = svd.matrixV().col(0);
    return out;
}

struct DenseEig {
    double lambda = 0.0;
    VectorXd vec;
};

inline DenseEig dense_principal_eig(const MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    DenseEig out;
    const Index n = a.rows();
    out.lambda = es.eigenvalues()[n - 1];
    out.vec = es.eigenvectors().col(n - 1);
    return out;
}

// Flip b so it points along a; returns the flipped copy.
inline VectorXd sign_align(const VectorXd& reference, const VectorXd& x) {
    return reference.dot(x) < 0.0 ? VectorXd(-x) : x;
}

// CORCONDIA oracle: explicit least-squares core from the full Kronecker
// system (C (x) B (x) A) vec(G) = vec(T), solved by dense normal equations.
// The lambda scale is absorbed into A, matching the library convention.
inline double corcondia_kronecker(const multinet::Tensor3& t, const multinet::CpModel& m) {
    const Index I = t.dim1(), J = t.dim2(), K = t.dim3();
    const Index r = static_cast<Index>(m.rank);
    const MatrixXd a = m.hub_factors * m.lambdas.asDiagonal();
    const MatrixXd& b = m.authority_factors;
    const MatrixXd& c = m.topic_factors;

    MatrixXd big(I * J * K, r * r * r);
    for (Index k = 0; k < K; ++k)
        for (Index j = 0; j < J; ++j)
            for (Index i = 0; i < I; ++i) {
                const Index row = i + I * (j + J * k);
                for (Index rr = 0; rr < r; ++rr)
                    for (Index q = 0; q < r; ++q)
                        for (Index p = 0; p < r; ++p)
                            big(row, p + r * (q + r * rr)) = a(i, p) * b(j, q) * c(k, rr);
            }
    VectorXd vec_t(I * J * K);
    for (Index k = 0; k < K; ++k)
        for (Index j = 0; j < J; ++j)
            for (Index i = 0; i < I; ++i) vec_t[i + I * (j + J * k)] = t(i, j, k);

    const VectorXd core =
        (big.transpose() * big).ldlt().solve(big.transpose() * vec_t);
    double ss = 0.0;
    for (Index rr = 0; rr < r; ++rr)
        for (Index q = 0; q < r; ++q)
            for (Index p = 0; p < r; ++p) {
                const double ideal = (p == q && q == rr) ? 1.0 : 0.0;
                const double d = core[p + r * (q + r * rr)] - ideal;
                ss += d * d;
            }
    return 100.0 * (1.0 - ss / static_cast<double>(r));
}

// Greedy best-cosine assignment of model columns to reference columns;
// returns for each reference column the matched model column index.
inline std::vector<Index> greedy_match(const MatrixXd& reference, const MatrixXd& candidate) {
    const Index r = reference.cols();
    std::vector<bool> used(static_cast<std::size_t>(candidate.cols()), false);
    std::vector<Index> match(static_cast<std::size_t>(r), -1);
    for (Index step = 0; step < r; ++step) {
        double best = -1.0;
        Index best_ref = -1, best_cand = -1;
        for (Index a = 0; a < r; ++a) {
            if (match[static_cast<std::size_t>(a)] >= 0) continue;
            for (Index b = 0; b < candidate.cols(); ++b) {
                if (used[static_cast<std::size_t>(b)]) continue;
                const double cos = std::abs(reference.col(a).normalized().dot(
                    candidate.col(b).normalized()));
                if (cos > best) {
                    best = cos;
                    best_ref = a;
                    best_cand = b;
                }
            }
        }
        match[static_cast<std::size_t>(best_ref)] = best_cand;
        used[static_cast<std::size_t>(best_cand)] = true;
    }
    return match;
}

// ---- random instance builders ----------------------------------------------

inline MatrixXd random_nonneg_matrix(multinet::Rng& rng, Index rows, Index cols,
                                     double density = 1.0) {
    MatrixXd m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = rng.uniform() < density ? rng.uniform() : 0.0;
    return m;
}

// Loop-free nonnegative adjacency matrix, symmetric when undirected.
inline MatrixXd random_adjacency(multinet::Rng& rng, Index n, double density, bool directed) {
    MatrixXd m = MatrixXd::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = directed ? 0 : j + 1; i < n; ++i) {
            if (i == j) continue;
            if (rng.uniform() < density) {
                const double w = rng.uniform(0.1, 1.0);
                m(i, j) = w;
                if (!directed) m(j, i) = w;
            }
        }
    return m;
}

inline std::vector<std::string> index_labels(Index n) {
    std::vector<std::string> labels;
    for (Index i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
    return labels;
}

inline multinet::LayerGraph random_layer(multinet::Rng& rng, Index n, double density,
                                         bool directed, const std::string& name = "rand") {
    return multinet::LayerGraph(index_labels(n), random_adjacency(rng, n, density, directed), name,
                                directed);
}

inline multinet::Tensor3 random_tensor(multinet::Rng& rng, Index i_dim, Index j_dim, Index k_dim,
                                       bool nonneg = true) {
    multinet::Tensor3 t(i_dim, j_dim, k_dim);
    for (auto& v : t.data()) v = nonneg ? rng.uniform() : rng.uniform(-1.0, 1.0);
    return t;
}

// Exact CP tensor with unit-norm factors whose pairwise cosines stay small
// (resampled until separated) and descending weights.
struct ExactCp {
    multinet::Tensor3 tensor;
    VectorXd lambdas;
    MatrixXd u, v, w;
};

inline MatrixXd separated_unit_columns(multinet::Rng& rng, Index n, Index r, double max_cos) {
    while (true) {
        MatrixXd m(n, r);
        for (Index c = 0; c < r; ++c) m.col(c) = rng.normal_vector(n).normalized();
        bool ok = true;
        for (Index a = 0; a < r && ok; ++a)
            for (Index b = a + 1; b < r && ok; ++b)
                ok = std::abs(m.col(a).dot(m.col(b))) <= max_cos;
        if (ok) return m;
    }
}

inline ExactCp exact_cp_tensor(multinet::Rng& rng, Index n, Index l, const VectorXd& lambdas,
                               double max_cos = 0.6) {
    const Index r = lambdas.size();
    ExactCp out{multinet::Tensor3(n, n, l), lambdas, separated_unit_columns(rng, n, r, max_cos),
                separated_unit_columns(rng, n, r, max_cos),
                separated_unit_columns(rng, l, r, max_cos)};
    for (Index c = 0; c < r; ++c)
        add_rank1(out.tensor, lambdas[c], out.u.col(c), out.v.col(c), out.w.col(c));
    return out;
}

}  // namespace oracles
