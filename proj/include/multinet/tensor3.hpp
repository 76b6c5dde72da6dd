#pragma once

#include <Eigen/Core>
#include <array>
#include <cassert>
#include <iosfwd>
#include <string>
#include <vector>

#include "multinet/errors.hpp"
#include "multinet/graph.hpp"

namespace multinet {

/// Dense third-order tensor of doubles.
///
/// Memory layout: index i runs fastest, then j, then k, i.e. element (i,j,k)
/// lives at data[i + I*(j + J*k)]. Each frontal slice (fixed k) is therefore a
/// contiguous column-major I x J matrix, and mode-n unfoldings below follow
/// the usual convention in which lower-numbered leftover modes vary fastest
/// along the columns.
class Tensor3 {
public:
    Tensor3(Index i_dim, Index j_dim, Index k_dim);

    /// n x n x K stack of the multinet's layer matrices: (i,j,k) is the
    /// weight of arc i -> j in layer k.
    static Tensor3 from_multinet(const MultiNet& m);

    Index dim1() const { return i_dim_; }
    Index dim2() const { return j_dim_; }
    Index dim3() const { return k_dim_; }
    std::array<Index, 3> dims() const { return {i_dim_, j_dim_, k_dim_}; }
    Index size() const { return i_dim_ * j_dim_ * k_dim_; }

    double operator()(Index i, Index j, Index k) const {
        assert(in_range(i, j, k));
        return data_[static_cast<std::size_t>(i + i_dim_ * (j + j_dim_ * k))];
    }
    double& operator()(Index i, Index j, Index k) {
        assert(in_range(i, j, k));
        return data_[static_cast<std::size_t>(i + i_dim_ * (j + j_dim_ * k))];
    }

    /// Bounds-checked access; throws std::out_of_range.
    double at(Index i, Index j, Index k) const;

    /// View of slice k as an I x J matrix. Throws std::out_of_range.
    Eigen::Map<const Eigen::MatrixXd> frontal_slice(Index k) const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    bool in_range(Index i, Index j, Index k) const {
        return i >= 0 && i < i_dim_ && j >= 0 && j < j_dim_ && k >= 0 && k < k_dim_;
    }

    Index i_dim_, j_dim_, k_dim_;
    std::vector<double> data_;
};

double frobenius_norm(const Tensor3& t);

/// Rank-one tensor u o v o w: element (i,j,k) = u_i * v_j * w_k.
Tensor3 outer3(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w);

/// Contracted products against vectors in two modes (the remaining mode
/// indexes the result):
///   contract2(t,a,s)[i] = sum_jk t(i,j,k) a_j s_k
///   contract1(t,h,s)[j] = sum_ik t(i,j,k) h_i s_k
///   contract12(t,h,a)[k] = sum_ij t(i,j,k) h_i a_j
Eigen::VectorXd contract2(const Tensor3& t, const Eigen::VectorXd& a, const Eigen::VectorXd& s);
Eigen::VectorXd contract1(const Tensor3& t, const Eigen::VectorXd& h, const Eigen::VectorXd& s);
Eigen::VectorXd contract12(const Tensor3& t, const Eigen::VectorXd& h, const Eigen::VectorXd& a);

/// Mode-n matricization. Column ordering (0-based column index of element
/// (i,j,k)):  mode 1: j + J*k;  mode 2: i + I*k;  mode 3: i + I*j.
Eigen::MatrixXd mode_unfold(const Tensor3& t, int mode);

/// Inverse of mode_unfold for the given target extents.
Tensor3 mode_fold(const Eigen::MatrixXd& m, int mode, std::array<Index, 3> dims);

/// Mode-n product t x_n m: the mode-n fibers are multiplied by m, so the
/// mode-n extent becomes m.rows(). m.cols() must match the current extent.
Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode);

/// Khatri-Rao (column-wise Kronecker) product. Rows of b vary fastest:
/// row index of the result is rb + b.rows()*ra.
Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Text serialization: header "I J K", then one "i j k value" line per
/// nonzero (0-based indices, lexicographic by i, j, k; 17 significant
/// digits). Round-trips finite doubles exactly.
void write_tensor_text(const Tensor3& t, std::ostream& out);
void write_tensor_text(const Tensor3& t, const std::string& path);
Tensor3 read_tensor_text(std::istream& in, const std::string& origin = "<stream>");
Tensor3 read_tensor_text(const std::string& path);

}  // namespace multinet
