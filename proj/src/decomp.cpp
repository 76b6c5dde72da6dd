#include "multinet/decomp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "json.hpp"
#include "multinet/rng.hpp"

namespace multinet {

namespace {

constexpr double kRidgeScale = 1e-12;
constexpr double kCondLimit = 1e12;

void require_nonzero(const Tensor3& t) {
    for (double v : t.data())
        if (v != 0.0) return;
    throw std::invalid_argument("all-zero tensor");
}

Eigen::VectorXd uniform_unit(Index n) {
    return Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
}

void flip_column_to_positive(Eigen::Ref<Eigen::VectorXd> col) {
    Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col[imax] < 0.0) col = -col;
}

// Top-r eigenvectors of m m^T, descending, each column sign-fixed.
Eigen::MatrixXd leading_subspace(const Eigen::MatrixXd& m, Index r) {
    Eigen::MatrixXd gram = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const Index n = gram.rows();
    Eigen::MatrixXd out(n, r);
    for (Index c = 0; c < r; ++c) {
        out.col(c) = es.eigenvectors().col(n - 1 - c);
        flip_column_to_positive(out.col(c));
    }
    return out;
}

}  // namespace

Eigen::VectorXd Triplet::topics_l1() const {
    const double norm1 = topics.cwiseAbs().sum();
    if (norm1 == 0.0) return topics;
    return topics / norm1;
}

TophitsResult tophits_rank1(const Tensor3& t, double tol, std::size_t max_iter) {
    require_nonzero(t);

    Eigen::VectorXd h = uniform_unit(t.dim1());
    Eigen::VectorXd a = uniform_unit(t.dim2());
    Eigen::VectorXd s = uniform_unit(t.dim3());

    TophitsResult r;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd h_next = contract2(t, a, s);
        double norm = h_next.norm();
        if (norm == 0.0) throw NumericError("hub iterate collapsed to zero");
        h_next /= norm;

        Eigen::VectorXd a_next = contract1(t, h_next, s);
        norm = a_next.norm();
        if (norm == 0.0) throw NumericError("authority iterate collapsed to zero");
        a_next /= norm;

        Eigen::VectorXd s_next = contract12(t, h_next, a_next);
        norm = s_next.norm();
        if (norm == 0.0) throw NumericError("topic iterate collapsed to zero");
        s_next /= norm;

        const double diff = std::max({(h_next - h).norm(), (a_next - a).norm(),
                                      (s_next - s).norm()});
        h = std::move(h_next);
        a = std::move(a_next);
        s = std::move(s_next);
        r.iterations = it;
        if (diff <= tol) {
            r.converged = true;
            break;
        }
    }

    double weight = h.dot(contract2(t, a, s));
    if (weight < 0.0) {
        s = -s;
        weight = -weight;
    }
    r.triplet.hubs = std::move(h);
    r.triplet.authorities = std::move(a);
    r.triplet.topics = std::move(s);
    r.triplet.weight = weight;
    r.triplet.factor_index = 1;
    return r;
}

namespace {

struct Factors {
    Eigen::MatrixXd u, v, w;
};

// Solve G X^T = M^T for X (G symmetric PSD, R x R). A ridge of
// kRidgeScale * trace(G) is added when the spectrum spans more than
// kCondLimit, and the event is recorded.
Eigen::MatrixXd solve_normal_equations(Eigen::MatrixXd gram, const Eigen::MatrixXd& mttkrp,
                                       bool& ridged) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double emax = es.eigenvalues().maxCoeff();
    const double emin = es.eigenvalues().minCoeff();
    if (!(emin > 0.0) || emax > emin * kCondLimit) {
        const double trace = gram.trace();
        gram.diagonal().array() += kRidgeScale * (trace > 0.0 ? trace : 1.0);
        ridged = true;
    }
    return gram.ldlt().solve(mttkrp.transpose()).transpose();
}

// Pull column norms out of a factor; dead columns become a unit basis vector
// with zero scale so the sweep can continue.
Eigen::VectorXd normalize_columns(Eigen::MatrixXd& f) {
    Eigen::VectorXd norms(f.cols());
    for (Index c = 0; c < f.cols(); ++c) {
        const double n = f.col(c).norm();
        norms[c] = n;
        if (n > 0.0)
            f.col(c) /= n;
        else
            f.col(c) = Eigen::VectorXd::Unit(f.rows(), c % f.rows());
    }
    return norms;
}

Tensor3 reconstruct_components(const Eigen::VectorXd& lambdas, const Eigen::MatrixXd& u,
                               const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) {
    const Index I = u.rows(), J = v.rows(), K = w.rows();
    Tensor3 out(I, J, K);
    for (Index r = 0; r < lambdas.size(); ++r)
        for (Index k = 0; k < K; ++k) {
            const double wk = lambdas[r] * w(k, r);
            if (wk == 0.0) continue;
            for (Index j = 0; j < J; ++j) {
                const double vw = v(j, r) * wk;
                for (Index i = 0; i < I; ++i) out(i, j, k) += u(i, r) * vw;
            }
        }
    return out;
}

double residual_fit(const Tensor3& t, const Eigen::VectorXd& lambdas, const Eigen::MatrixXd& u,
                    const Eigen::MatrixXd& v, const Eigen::MatrixXd& w, double norm_t) {
    const Tensor3 recon = reconstruct_components(lambdas, u, v, w);
    double err = 0.0;
    const auto& a = t.data();
    const auto& b = recon.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        err += d * d;
    }
    return 1.0 - std::sqrt(err) / norm_t;
}

// One ALS run from the given factors. Each mode solves the normal equations
// of its linear least-squares subproblem, so the residual never increases;
// the run stops once the fit change between sweeps drops to opts.tol.
CpModel als_run(const Tensor3& t, Factors f, const CpOptions& opts) {
    const Index rank = f.u.cols();
    const Eigen::MatrixXd x1 = mode_unfold(t, 1);
    const Eigen::MatrixXd x2 = mode_unfold(t, 2);
    const Eigen::MatrixXd x3 = mode_unfold(t, 3);
    const double norm_t = frobenius_norm(t);

    CpModel m;
    m.rank = static_cast<std::size_t>(rank);
    m.options = opts;

    bool ridged = false;
    Eigen::VectorXd lambdas = Eigen::VectorXd::Ones(rank);
    double fit = -std::numeric_limits<double>::infinity();

    for (std::size_t sweep = 1; sweep <= opts.max_iter; ++sweep) {
        Eigen::MatrixXd gram =
            (f.v.transpose() * f.v).cwiseProduct(f.w.transpose() * f.w);
        f.u = solve_normal_equations(std::move(gram), x1 * khatri_rao(f.w, f.v), ridged);
        normalize_columns(f.u);

        gram = (f.u.transpose() * f.u).cwiseProduct(f.w.transpose() * f.w);
        f.v = solve_normal_equations(std::move(gram), x2 * khatri_rao(f.w, f.u), ridged);
        normalize_columns(f.v);

        gram = (f.u.transpose() * f.u).cwiseProduct(f.v.transpose() * f.v);
        f.w = solve_normal_equations(std::move(gram), x3 * khatri_rao(f.v, f.u), ridged);
        lambdas = normalize_columns(f.w);

        const double new_fit = residual_fit(t, lambdas, f.u, f.v, f.w, norm_t);
        m.iterations = sweep;
        const bool done = std::abs(new_fit - fit) <= opts.tol;
        fit = new_fit;
        if (done) {
            m.converged = true;
            break;
        }
    }

    // Descending weights; sign convention: the largest-magnitude entry of
    // each hub column is positive, with the compensating flip on the
    // authority column.
    std::vector<Index> order(static_cast<std::size_t>(rank));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return lambdas[a] > lambdas[b]; });

    m.lambdas.resize(rank);
    m.hub_factors.resize(f.u.rows(), rank);
    m.authority_factors.resize(f.v.rows(), rank);
    m.topic_factors.resize(f.w.rows(), rank);
    for (Index c = 0; c < rank; ++c) {
        const Index src = order[static_cast<std::size_t>(c)];
        m.lambdas[c] = lambdas[src];
        m.hub_factors.col(c) = f.u.col(src);
        m.authority_factors.col(c) = f.v.col(src);
        m.topic_factors.col(c) = f.w.col(src);
        Index imax = 0;
        m.hub_factors.col(c).cwiseAbs().maxCoeff(&imax);
        if (m.hub_factors(imax, c) < 0.0) {
            m.hub_factors.col(c) = -m.hub_factors.col(c);
            m.authority_factors.col(c) = -m.authority_factors.col(c);
        }
    }
    m.fit = fit;
    if (ridged)
        m.diagnostics.push_back("ridge regularization applied (ill-conditioned normal equations)");
    return m;
}

// Leading eigenvectors of each unfolding's Gram matrix; extra columns beyond
// the extent are filled from the rng.
Eigen::MatrixXd spectral_init_mode(const Eigen::MatrixXd& unfolding, Index rank, Rng& rng) {
    const Index n = unfolding.rows();
    const Index spectral = std::min(rank, n);
    Eigen::MatrixXd f(n, rank);
    f.leftCols(spectral) = leading_subspace(unfolding, spectral);
    for (Index c = spectral; c < rank; ++c) {
        Eigen::VectorXd col = rng.uniform_vector(n);
        const double norm = col.norm();
        f.col(c) = norm > 0.0 ? Eigen::VectorXd(col / norm) : Eigen::VectorXd::Unit(n, c % n);
    }
    return f;
}

Eigen::MatrixXd random_init_mode(Index n, Index rank, Rng& rng) {
    Eigen::MatrixXd f(n, rank);
    for (Index c = 0; c < rank; ++c) {
        Eigen::VectorXd col = rng.uniform_vector(n);
        const double norm = col.norm();
        f.col(c) = norm > 0.0 ? Eigen::VectorXd(col / norm) : Eigen::VectorXd::Unit(n, c % n);
    }
    return f;
}

std::optional<std::string> rank_warning(const Tensor3& t, Index rank) {
    const Index total = t.size();
    for (int mode = 1; mode <= 3; ++mode) {
        const Index extent = t.dims()[static_cast<std::size_t>(mode - 1)];
        const Index smaller = std::min(extent, total / std::max<Index>(extent, 1));
        if (rank > smaller)
            return "rank " + std::to_string(rank) + " exceeds the smaller dimension (" +
                   std::to_string(smaller) + ") of the mode-" + std::to_string(mode) +
                   " unfolding; the factorization is underdetermined";
    }
    return std::nullopt;
}

}  // namespace

CpModel cp_als(const Tensor3& t, std::size_t rank, const CpOptions& opts) {
    require_nonzero(t);
    if (rank < 1) throw std::invalid_argument("cp rank must be at least 1");
    const Index r = static_cast<Index>(rank);
    const std::size_t runs = std::max<std::size_t>(opts.restarts, 1);

    std::optional<CpModel> best;
    for (std::size_t run = 0; run < runs; ++run) {
        Rng rng(opts.seed + run);
        Factors f;
        if (run == 0) {
            f.u = spectral_init_mode(mode_unfold(t, 1), r, rng);
            f.v = spectral_init_mode(mode_unfold(t, 2), r, rng);
            f.w = spectral_init_mode(mode_unfold(t, 3), r, rng);
        } else {
            f.u = random_init_mode(t.dim1(), r, rng);
            f.v = random_init_mode(t.dim2(), r, rng);
            f.w = random_init_mode(t.dim3(), r, rng);
        }
        CpModel candidate = als_run(t, std::move(f), opts);
        if (!best || candidate.fit > best->fit) best = std::move(candidate);
    }
    if (auto warning = rank_warning(t, r)) best->diagnostics.push_back(*warning);
    return std::move(*best);
}

CpModel cp_als_with_init(const Tensor3& t, const Eigen::MatrixXd& u0, const Eigen::MatrixXd& v0,
                         const Eigen::MatrixXd& w0, const CpOptions& opts) {
    require_nonzero(t);
    if (u0.cols() < 1 || u0.cols() != v0.cols() || u0.cols() != w0.cols())
        throw DimensionError("initial factors must share a positive column count");
    if (u0.rows() != t.dim1() || v0.rows() != t.dim2() || w0.rows() != t.dim3())
        throw DimensionError("initial factor rows must match tensor extents");
    CpModel m = als_run(t, Factors{u0, v0, w0}, opts);
    if (auto warning = rank_warning(t, u0.cols())) m.diagnostics.push_back(*warning);
    return m;
}

std::vector<Triplet> triplets(const CpModel& m) {
    std::vector<Triplet> out;
    out.reserve(m.rank);
    for (std::size_t r = 0; r < m.rank; ++r) {
        Triplet tr;
        tr.hubs = m.hub_factors.col(static_cast<Index>(r));
        tr.authorities = m.authority_factors.col(static_cast<Index>(r));
        tr.topics = m.topic_factors.col(static_cast<Index>(r));
        tr.weight = m.lambdas[static_cast<Index>(r)];
        tr.factor_index = r + 1;
        out.push_back(std::move(tr));
    }
    return out;
}

namespace {

std::vector<std::pair<Index, double>> top_k(const Eigen::VectorXd& scores, std::size_t k) {
    std::vector<Index> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    const std::size_t take = std::min(k, order.size());
    std::vector<std::pair<Index, double>> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.emplace_back(order[i], scores[order[i]]);
    return out;
}

}  // namespace

Subgroup subgroup(const CpModel& m, std::size_t factor_index, std::size_t k) {
    if (factor_index < 1 || factor_index > m.rank)
        throw std::out_of_range("factor index " + std::to_string(factor_index) +
                                " exceeds rank " + std::to_string(m.rank));
    const Index c = static_cast<Index>(factor_index - 1);
    Subgroup s;
    s.hubs = top_k(m.hub_factors.col(c), k);
    s.authorities = top_k(m.authority_factors.col(c), k);
    return s;
}

TuckerModel tucker(const Tensor3& t, std::array<Index, 3> core_dims, double tol,
                   std::size_t max_iter) {
    require_nonzero(t);
    for (int mode = 0; mode < 3; ++mode) {
        if (core_dims[static_cast<std::size_t>(mode)] < 1 ||
            core_dims[static_cast<std::size_t>(mode)] > t.dims()[static_cast<std::size_t>(mode)])
            throw std::invalid_argument("core extent for mode " + std::to_string(mode + 1) +
                                        " must lie in [1, tensor extent]");
    }
    const Index p = core_dims[0], q = core_dims[1], r = core_dims[2];

    Eigen::MatrixXd u1 = leading_subspace(mode_unfold(t, 1), p);
    Eigen::MatrixXd u2 = leading_subspace(mode_unfold(t, 2), q);
    Eigen::MatrixXd u3 = leading_subspace(mode_unfold(t, 3), r);

    const double norm_t = frobenius_norm(t);
    TuckerModel m{Tensor3(p, q, r), {}, {}, {}, 0.0, 0, false};
    double fit = -std::numeric_limits<double>::infinity();

    for (std::size_t it = 1; it <= max_iter; ++it) {
        u1 = leading_subspace(
            mode_unfold(mode_product(mode_product(t, u2.transpose(), 2), u3.transpose(), 3), 1), p);
        u2 = leading_subspace(
            mode_unfold(mode_product(mode_product(t, u1.transpose(), 1), u3.transpose(), 3), 2), q);
        u3 = leading_subspace(
            mode_unfold(mode_product(mode_product(t, u1.transpose(), 1), u2.transpose(), 2), 3), r);

        Tensor3 core = mode_product(
            mode_product(mode_product(t, u1.transpose(), 1), u2.transpose(), 2), u3.transpose(), 3);
        Tensor3 recon = mode_product(mode_product(mode_product(core, u1, 1), u2, 2), u3, 3);
        double err = 0.0;
        for (std::size_t i = 0; i < t.data().size(); ++i) {
            const double d = t.data()[i] - recon.data()[i];
            err += d * d;
        }
        const double new_fit = 1.0 - std::sqrt(err) / norm_t;
        m.iterations = it;
        m.core = std::move(core);
        const bool done = std::abs(new_fit - fit) <= tol;
        fit = new_fit;
        if (done) {
            m.converged = true;
            break;
        }
    }
    m.factors1 = std::move(u1);
    m.factors2 = std::move(u2);
    m.factors3 = std::move(u3);
    m.fit = fit;
    return m;
}

double corcondia(const Tensor3& t, const CpModel& m) {
    const Index rank = static_cast<Index>(m.rank);
    if (m.hub_factors.rows() != t.dim1() || m.authority_factors.rows() != t.dim2() ||
        m.topic_factors.rows() != t.dim3())
        throw DimensionError("model factor shapes do not match the tensor");
    if (rank > t.dim1() || rank > t.dim2() || rank > t.dim3())
        throw DimensionError("rank " + std::to_string(rank) +
                             " exceeds a tensor extent: the least-squares core system is "
                             "underdetermined");

    // Scale convention: the lambdas are absorbed into the hub factors, so an
    // exact model has the superdiagonal identity as its least-squares core.
    const Eigen::MatrixXd a = m.hub_factors * m.lambdas.asDiagonal();
    const auto pinv = [](const Eigen::MatrixXd& x) {
        return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(x).pseudoInverse();
    };
    const Tensor3 core = mode_product(
        mode_product(mode_product(t, pinv(a), 1), pinv(m.authority_factors), 2),
        pinv(m.topic_factors), 3);

    double ss = 0.0;
    for (Index k = 0; k < rank; ++k)
        for (Index j = 0; j < rank; ++j)
            for (Index i = 0; i < rank; ++i) {
                const double ideal = (i == j && j == k) ? 1.0 : 0.0;
                const double d = core(i, j, k) - ideal;
                ss += d * d;
            }
    return 100.0 * (1.0 - ss / static_cast<double>(rank));
}

std::vector<RankSweepRow> fit_sweep(const Tensor3& t, const std::vector<std::size_t>& ranks,
                                    const CpOptions& opts, bool warm_start) {
    std::vector<RankSweepRow> rows;
    rows.reserve(ranks.size());
    std::optional<CpModel> prev;
    Rng fresh_rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);

    for (std::size_t rank : ranks) {
        CpModel best = cp_als(t, rank, opts);
        if (warm_start && prev && rank >= 1) {
            const Index r = static_cast<Index>(rank);
            const Index keep = std::min(static_cast<Index>(prev->rank), r);
            Eigen::MatrixXd u0(t.dim1(), r), v0(t.dim2(), r), w0(t.dim3(), r);
            u0.leftCols(keep) = prev->hub_factors.leftCols(keep);
            v0.leftCols(keep) = prev->authority_factors.leftCols(keep);
            w0.leftCols(keep) = prev->topic_factors.leftCols(keep);
            for (Index c = keep; c < r; ++c) {
                u0.col(c) = fresh_rng.uniform_vector(t.dim1()).normalized();
                v0.col(c) = fresh_rng.uniform_vector(t.dim2()).normalized();
                w0.col(c) = fresh_rng.uniform_vector(t.dim3()).normalized();
            }
            CpModel warm = cp_als_with_init(t, u0, v0, w0, opts);
            if (warm.fit > best.fit) best = std::move(warm);
        }

        RankSweepRow row;
        row.rank = rank;
        row.fit = best.fit;
        row.converged = best.converged;
        const Index r = static_cast<Index>(rank);
        if (r <= t.dim1() && r <= t.dim2() && r <= t.dim3()) {
            row.corcondia = corcondia(t, best);
            row.corcondia_defined = true;
        } else {
            row.corcondia = std::numeric_limits<double>::quiet_NaN();
            row.corcondia_defined = false;
        }
        rows.push_back(row);
        prev = std::move(best);
    }
    return rows;
}

Tensor3 reconstruct(const CpModel& m) {
    return reconstruct_components(m.lambdas, m.hub_factors, m.authority_factors, m.topic_factors);
}

double model_fit(const Tensor3& t, const CpModel& m) {
    if (m.hub_factors.rows() != t.dim1() || m.authority_factors.rows() != t.dim2() ||
        m.topic_factors.rows() != t.dim3())
        throw DimensionError("model factor shapes do not match the tensor");
    return residual_fit(t, m.lambdas, m.hub_factors, m.authority_factors, m.topic_factors,
                        frobenius_norm(t));
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(m.size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
    return flat;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                                 const char* name) {
    const auto flat = j.get<std::vector<double>>();
    if (static_cast<Index>(flat.size()) != rows * cols)
        throw ParseError(std::string(name) + ": expected " + std::to_string(rows * cols) +
                         " values, got " + std::to_string(flat.size()));
    Eigen::MatrixXd m(rows, cols);
    std::size_t idx = 0;
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = flat[idx++];
    return m;
}

}  // namespace

std::string cp_to_json(const CpModel& m) {
    nlohmann::json j;
    j["format"] = "multinet-cp";
    j["rank"] = m.rank;
    j["dims"] = {{"hubs", m.hub_factors.rows()},
                 {"authorities", m.authority_factors.rows()},
                 {"topics", m.topic_factors.rows()}};
    j["lambdas"] = std::vector<double>(m.lambdas.data(), m.lambdas.data() + m.lambdas.size());
    j["hub_factors"] = matrix_to_json(m.hub_factors);
    j["authority_factors"] = matrix_to_json(m.authority_factors);
    j["topic_factors"] = matrix_to_json(m.topic_factors);
    j["fit"] = m.fit;
    j["iterations"] = m.iterations;
    j["converged"] = m.converged;
    j["diagnostics"] = m.diagnostics;
    j["settings"] = {{"tol", m.options.tol},
                     {"max_iter", m.options.max_iter},
                     {"restarts", m.options.restarts},
                     {"seed", m.options.seed}};
    return j.dump(2);
}

CpModel cp_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model json: ") + e.what());
    }
    try {
        if (j.value("format", "") != "multinet-cp") throw ParseError("not a multinet-cp document");
        CpModel m;
        m.rank = j.at("rank").get<std::size_t>();
        const Index rank = static_cast<Index>(m.rank);
        const Index rows_u = j.at("dims").at("hubs").get<Index>();
        const Index rows_v = j.at("dims").at("authorities").get<Index>();
        const Index rows_w = j.at("dims").at("topics").get<Index>();
        const auto lambdas = j.at("lambdas").get<std::vector<double>>();
        if (static_cast<Index>(lambdas.size()) != rank)
            throw ParseError("lambda count does not match rank");
        m.lambdas = Eigen::Map<const Eigen::VectorXd>(lambdas.data(), rank);
        m.hub_factors = matrix_from_json(j.at("hub_factors"), rows_u, rank, "hub_factors");
        m.authority_factors =
            matrix_from_json(j.at("authority_factors"), rows_v, rank, "authority_factors");
        m.topic_factors = matrix_from_json(j.at("topic_factors"), rows_w, rank, "topic_factors");
        m.fit = j.at("fit").get<double>();
        m.iterations = j.at("iterations").get<std::size_t>();
        m.converged = j.at("converged").get<bool>();
        m.diagnostics = j.value("diagnostics", std::vector<std::string>{});
        if (j.contains("settings")) {
            const auto& s = j.at("settings");
            m.options.tol = s.value("tol", m.options.tol);
            m.options.max_iter = s.value("max_iter", m.options.max_iter);
            m.options.restarts = s.value("restarts", m.options.restarts);
            m.options.seed = s.value("seed", m.options.seed);
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model json: ") + e.what());
    }
}

}  // namespace multinet
