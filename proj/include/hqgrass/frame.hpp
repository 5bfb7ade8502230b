#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hqgrass/space.hpp"

namespace hqgrass {

inline constexpr double kDefaultRankTol = 1e-8;

// A subspace of R^{4n}, stored as a column-orthonormal basis matrix.
class Frame {
public:
    Frame() = default;
    explicit Frame(int ambient_dim) : B_(Eigen::MatrixXd(ambient_dim, 0)) {}

    // Trusts that B has orthonormal columns (validated to 1e-8).
    static Frame from_orthonormal(const Eigen::MatrixXd& B);
    // Rank-revealing orthonormalization of arbitrary spanning columns.
    static Frame orthonormalize(const Eigen::MatrixXd& cols, double tol = kDefaultRankTol);
    static Frame orthonormalize(int ambient_dim, const std::vector<Eigen::VectorXd>& vecs,
                                double tol = kDefaultRankTol);
    static Frame span_of(const Eigen::VectorXd& v);
    static Frame span_of(const Eigen::VectorXd& v, const Eigen::VectorXd& w);

    const Eigen::MatrixXd& basis() const { return B_; }
    int dim() const { return static_cast<int>(B_.cols()); }
    int ambient_dim() const { return static_cast<int>(B_.rows()); }
    Eigen::VectorXd col(int c) const { return B_.col(c); }

    // B B^T x
    Eigen::VectorXd project(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd projector() const { return B_ * B_.transpose(); }

    double orthonormality_residual() const;
    bool contains(const Eigen::VectorXd& x, double tol = 1e-8) const;

private:
    Eigen::MatrixXd B_;
};

// Lattice operations. Rank decisions use `tol` on singular values.
Frame intersect(const Frame& U, const Frame& W, double tol = kDefaultRankTol);
Frame subspace_sum(const Frame& U, const Frame& W, double tol = kDefaultRankTol);
// Orthogonal complement of W inside U (W need not be contained in U;
// it is projected onto U first).
Frame complement_in(const Frame& U, const Frame& W, double tol = kDefaultRankTol);

// span of U + IU + JU + KU; invariant under I, J, K.
Frame quaternionify(const HQSpace& space, const Frame& U, double tol = kDefaultRankTol);

// true iff every principal angle between U^H and W^H is within tol of pi/2
bool is_hermitian_orthogonal(const HQSpace& space, const Frame& U, const Frame& W,
                             double tol = 1e-8);

// Hermitian-orthonormal list of vectors: (v_p . v_q) = delta_pq as quaternions.
struct HFrame {
    std::vector<Eigen::VectorXd> cols;

    int size() const { return static_cast<int>(cols.size()); }
    // max-abs deviation of the Hermitian Gram matrix from the identity
    double gram_residual(const HQSpace& space) const;
};

// Quaternionic Gram-Schmidt; vectors with residual norm below tol are dropped.
HFrame h_orthonormalize(const HQSpace& space, const std::vector<Eigen::VectorXd>& vecs,
                        double tol = kDefaultRankTol);

}  // namespace hqgrass
