#include "multinet/tensor3.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace multinet {

Tensor3::Tensor3(Index i_dim, Index j_dim, Index k_dim)
    : i_dim_(i_dim), j_dim_(j_dim), k_dim_(k_dim) {
    if (i_dim < 0 || j_dim < 0 || k_dim < 0)
        throw DimensionError("tensor extents must be nonnegative");
    data_.assign(static_cast<std::size_t>(i_dim * j_dim * k_dim), 0.0);
}

Tensor3 Tensor3::from_multinet(const MultiNet& m) {
    const Index n = m.node_count();
    const Index l = static_cast<Index>(m.layer_count());
    Tensor3 t(n, n, l);
    for (Index k = 0; k < l; ++k) {
        const auto& w = m.layer(static_cast<std::size_t>(k)).weights();
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) t(i, j, k) = w(i, j);
    }
    return t;
}

double Tensor3::at(Index i, Index j, Index k) const {
    if (!in_range(i, j, k))
        throw std::out_of_range("tensor index (" + std::to_string(i) + "," + std::to_string(j) +
                                "," + std::to_string(k) + ") outside " + std::to_string(i_dim_) +
                                "x" + std::to_string(j_dim_) + "x" + std::to_string(k_dim_));
    return (*this)(i, j, k);
}

Eigen::Map<const Eigen::MatrixXd> Tensor3::frontal_slice(Index k) const {
    if (k < 0 || k >= k_dim_)
        throw std::out_of_range("slice " + std::to_string(k) + " outside K=" +
                                std::to_string(k_dim_));
    return Eigen::Map<const Eigen::MatrixXd>(data_.data() + i_dim_ * j_dim_ * k, i_dim_, j_dim_);
}

double frobenius_norm(const Tensor3& t) {
    double sum = 0.0;
    for (double v : t.data()) sum += v * v;
    return std::sqrt(sum);
}

Tensor3 outer3(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    Tensor3 t(u.size(), v.size(), w.size());
    for (Index k = 0; k < w.size(); ++k)
        for (Index j = 0; j < v.size(); ++j) {
            const double vw = v[j] * w[k];
            for (Index i = 0; i < u.size(); ++i) t(i, j, k) = u[i] * vw;
        }
    return t;
}

namespace {

void check_length(const Eigen::VectorXd& x, Index expected, const char* which) {
    if (x.size() != expected)
        throw DimensionError(std::string(which) + " has length " + std::to_string(x.size()) +
                             ", expected " + std::to_string(expected));
}

}  // namespace

Eigen::VectorXd contract2(const Tensor3& t, const Eigen::VectorXd& a, const Eigen::VectorXd& s) {
    check_length(a, t.dim2(), "mode-2 vector");
    check_length(s, t.dim3(), "mode-3 vector");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(t.dim1());
    for (Index k = 0; k < t.dim3(); ++k) out.noalias() += s[k] * (t.frontal_slice(k) * a);
    return out;
}

Eigen::VectorXd contract1(const Tensor3& t, const Eigen::VectorXd& h, const Eigen::VectorXd& s) {
    check_length(h, t.dim1(), "mode-1 vector");
    check_length(s, t.dim3(), "mode-3 vector");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(t.dim2());
    for (Index k = 0; k < t.dim3(); ++k)
        out.noalias() += s[k] * (t.frontal_slice(k).transpose() * h);
    return out;
}

Eigen::VectorXd contract12(const Tensor3& t, const Eigen::VectorXd& h, const Eigen::VectorXd& a) {
    check_length(h, t.dim1(), "mode-1 vector");
    check_length(a, t.dim2(), "mode-2 vector");
    Eigen::VectorXd out(t.dim3());
    for (Index k = 0; k < t.dim3(); ++k) out[k] = h.dot(t.frontal_slice(k) * a);
    return out;
}

Eigen::MatrixXd mode_unfold(const Tensor3& t, int mode) {
    const Index I = t.dim1(), J = t.dim2(), K = t.dim3();
    switch (mode) {
        case 1:
            // Layout is already i-fastest, so this is a straight reshape.
            return Eigen::Map<const Eigen::MatrixXd>(t.data().data(), I, J * K);
        case 2: {
            Eigen::MatrixXd m(J, I * K);
            for (Index k = 0; k < K; ++k)
                for (Index i = 0; i < I; ++i)
                    for (Index j = 0; j < J; ++j) m(j, i + I * k) = t(i, j, k);
            return m;
        }
        case 3: {
            Eigen::MatrixXd m(K, I * J);
            for (Index j = 0; j < J; ++j)
                for (Index i = 0; i < I; ++i)
                    for (Index k = 0; k < K; ++k) m(k, i + I * j) = t(i, j, k);
            return m;
        }
        default: throw std::invalid_argument("mode must be 1, 2 or 3");
    }
}

Tensor3 mode_fold(const Eigen::MatrixXd& m, int mode, std::array<Index, 3> dims) {
    const Index I = dims[0], J = dims[1], K = dims[2];
    Tensor3 t(I, J, K);
    Index rows = 0, cols = 0;
    switch (mode) {
        case 1: rows = I; cols = J * K; break;
        case 2: rows = J; cols = I * K; break;
        case 3: rows = K; cols = I * J; break;
        default: throw std::invalid_argument("mode must be 1, 2 or 3");
    }
    if (m.rows() != rows || m.cols() != cols)
        throw DimensionError("unfolding of shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " does not match target extents");
    for (Index k = 0; k < K; ++k)
        for (Index j = 0; j < J; ++j)
            for (Index i = 0; i < I; ++i) {
                double v = 0.0;
                if (mode == 1) v = m(i, j + J * k);
                else if (mode == 2) v = m(j, i + I * k);
                else v = m(k, i + I * j);
                t(i, j, k) = v;
            }
    return t;
}

Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode) {
    std::array<Index, 3> dims = t.dims();
    const Index extent = dims[static_cast<std::size_t>(mode - 1)];
    if (mode < 1 || mode > 3) throw std::invalid_argument("mode must be 1, 2 or 3");
    if (m.cols() != extent)
        throw DimensionError("mode-" + std::to_string(mode) + " product needs " +
                             std::to_string(extent) + " columns, got " + std::to_string(m.cols()));
    dims[static_cast<std::size_t>(mode - 1)] = m.rows();
    return mode_fold(m * mode_unfold(t, mode), mode, dims);
}

Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols())
        throw DimensionError("khatri_rao needs matching column counts");
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols());
    for (Index c = 0; c < a.cols(); ++c)
        for (Index ra = 0; ra < a.rows(); ++ra)
            out.block(ra * b.rows(), c, b.rows(), 1) = a(ra, c) * b.col(c);
    return out;
}

void write_tensor_text(const Tensor3& t, std::ostream& out) {
    out << t.dim1() << ' ' << t.dim2() << ' ' << t.dim3() << '\n';
    char buf[96];
    for (Index i = 0; i < t.dim1(); ++i)
        for (Index j = 0; j < t.dim2(); ++j)
            for (Index k = 0; k < t.dim3(); ++k) {
                const double v = t(i, j, k);
                if (v == 0.0) continue;
                std::snprintf(buf, sizeof buf, "%" PRIdMAX " %" PRIdMAX " %" PRIdMAX " %.17g",
                              static_cast<std::intmax_t>(i), static_cast<std::intmax_t>(j),
                              static_cast<std::intmax_t>(k), v);
                out << buf << '\n';
            }
}

void write_tensor_text(const Tensor3& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_tensor_text(t, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

Tensor3 read_tensor_text(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(origin, 1, "missing header line");
    ++line_no;
    std::istringstream header(line);
    Index I, J, K;
    if (!(header >> I >> J >> K) || I < 0 || J < 0 || K < 0)
        throw ParseError(origin, line_no, "header must be 'I J K'");
    Tensor3 t(I, J, K);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        Index i, j, k;
        double v;
        if (!(row >> i >> j >> k >> v)) throw ParseError(origin, line_no, "expected 'i j k value'");
        if (i < 0 || i >= I || j < 0 || j >= J || k < 0 || k >= K)
            throw ParseError(origin, line_no, "index outside declared extents");
        t(i, j, k) = v;
    }
    return t;
}

Tensor3 read_tensor_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_tensor_text(in, path);
}

}  // namespace multinet
