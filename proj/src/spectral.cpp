#include "multinet/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "multinet/errors.hpp"

namespace multinet {

namespace {

void flip_to_positive(Eigen::VectorXd& x) {
    Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    if (x[imax] < 0.0) x = -x;
}

// Pair of flips keeping u v^T invariant.
void flip_pair(Eigen::VectorXd& u, Eigen::VectorXd& v) {
    Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    if (u[imax] < 0.0) {
        u = -u;
        v = -v;
    }
}

// Second eigenvalue of the PSD operator x -> A^T (A x), estimated by power
// iteration deflated against the known principal pair (lambda1, v1).
double second_eigenvalue(const Eigen::MatrixXd& a, double lambda1, const Eigen::VectorXd& v1,
                         std::size_t max_iter) {
    const Index n = a.cols();
    if (n < 2) return 0.0;

    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    x -= v1.dot(x) * v1;
    if (x.norm() < 1e-12) {
        Index imin = 0;
        v1.cwiseAbs().minCoeff(&imin);
        x = Eigen::VectorXd::Unit(n, imin);
        x -= v1.dot(x) * v1;
    }
    if (x.norm() == 0.0) return 0.0;
    x.normalize();

    double lambda2 = 0.0;
    const std::size_t iters = std::min<std::size_t>(max_iter, 500);
    for (std::size_t it = 0; it < iters; ++it) {
        Eigen::VectorXd y = a.transpose() * (a * x);
        y -= lambda1 * v1.dot(x) * v1;
        y -= v1.dot(y) * v1;  // re-project, deflation drifts in fp
        const double norm = y.norm();
        if (norm == 0.0) return 0.0;
        y /= norm;
        const double estimate = y.dot(a.transpose() * (a * y));
        if (std::abs(estimate - lambda2) <= 1e-10 * std::max(1.0, std::abs(estimate))) {
            lambda2 = estimate;
            break;
        }
        lambda2 = estimate;
        x = std::move(y);
    }
    return lambda2;
}

struct AlternatingResult {
    Eigen::VectorXd u, v;
    double sigma = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool gap_ok = false;
};

// u <- A v / |A v|, v <- A^T u / |A^T u|, from uniform starts. The v-sequence
// is power iteration on the PSD matrix A^T A, so no shift is needed.
AlternatingResult alternating_svd(const Eigen::MatrixXd& a, double tol, std::size_t max_iter) {
    const Index rows = a.rows(), cols = a.cols();
    if (rows == 0 || cols == 0 || a.isZero(0.0))
        throw std::invalid_argument("all-zero matrix has no principal singular pair");

    AlternatingResult r;
    r.u = Eigen::VectorXd::Constant(rows, 1.0 / std::sqrt(double(rows)));
    r.v = Eigen::VectorXd::Constant(cols, 1.0 / std::sqrt(double(cols)));

    for (std::size_t it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd u_next = a * r.v;
        const double nu = u_next.norm();
        if (nu == 0.0) throw NumericError("iterate collapsed to zero (u)");
        u_next /= nu;

        Eigen::VectorXd v_next = a.transpose() * u_next;
        const double sigma = v_next.norm();
        if (sigma == 0.0) throw NumericError("iterate collapsed to zero (v)");
        v_next /= sigma;

        const double du = (u_next - r.u).norm();
        const double dv = (v_next - r.v).norm();
        r.u = std::move(u_next);
        r.v = std::move(v_next);
        r.sigma = sigma;
        r.iterations = it;
        if (std::max(du, dv) <= tol) {
            r.converged = true;
            break;
        }
    }

    const double lambda1 = r.sigma * r.sigma;
    const double lambda2 = second_eigenvalue(a, lambda1, r.v, max_iter);
    r.gap_ok = (lambda1 - lambda2) > kGapRelThreshold * lambda1;
    return r;
}

}  // namespace

CentralityResult eigencentrality(const LayerGraph& g, double tol, std::size_t max_iter) {
    const Eigen::MatrixXd& a = g.weights();
    const Index n = a.rows();
    if (!a.isApprox(a.transpose(), 0.0))
        throw std::invalid_argument("eigencentrality requires a symmetric (undirected) layer");
    if (n == 0 || a.isZero(0.0))
        throw std::invalid_argument("all-zero layer has no principal eigenvector");

    // Iterate on A + cI with c the max row sum: same eigenvectors, and the
    // shifted spectrum has a strictly dominant top, so bipartite layers
    // (lambda_min = -lambda_max) converge too.
    const double shift = a.rowwise().sum().maxCoeff();
    const double norm_a = a.norm();

    CentralityResult r;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd y = a * x + shift * x;
        const double ny = y.norm();
        if (ny == 0.0) throw NumericError("power iterate collapsed to zero");
        y /= ny;
        const double diff = (y - x).norm();
        x = std::move(y);
        r.iterations = it;
        if (diff <= tol) {
            const Eigen::VectorXd ax = a * x;
            const double lambda = x.dot(ax);
            if ((ax - lambda * x).norm() <= tol * norm_a) {
                r.converged = true;
                break;
            }
        }
    }
    flip_to_positive(x);
    r.scores = std::move(x);
    r.eigenvalue = r.scores.dot(a * r.scores);
    return r;
}

HitsResult hits(const LayerGraph& g, double tol, std::size_t max_iter) {
    AlternatingResult alt = alternating_svd(g.weights(), tol, max_iter);
    HitsResult r;
    r.hubs = std::move(alt.u);
    r.authorities = std::move(alt.v);
    r.iterations = alt.iterations;
    r.converged = alt.converged;
    r.gap_ok = alt.gap_ok;
    r.sigma = alt.sigma;
    return r;
}

Rank1Svd rank1_svd(const Eigen::MatrixXd& a, double tol, std::size_t max_iter) {
    AlternatingResult alt = alternating_svd(a, tol, max_iter);
    Rank1Svd r;
    r.u = std::move(alt.u);
    r.v = std::move(alt.v);
    flip_pair(r.u, r.v);
    r.sigma = alt.sigma;
    r.iterations = alt.iterations;
    r.converged = alt.converged;
    r.gap_ok = alt.gap_ok;
    return r;
}

}  // namespace multinet
