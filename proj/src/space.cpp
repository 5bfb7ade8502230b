#include "hqgrass/space.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hqgrass {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    os << q.w << (q.x < 0 ? " - " : " + ") << std::abs(q.x) << "i"
       << (q.y < 0 ? " - " : " + ") << std::abs(q.y) << "j"
       << (q.z < 0 ? " - " : " + ") << std::abs(q.z) << "k";
    return os;
}

StructureCoeffs StructureCoeffs::canonical_sign() const {
    constexpr double kZero = 1e-9;
    for (double c : {alpha, beta, gamma}) {
        if (std::abs(c) > kZero) return c > 0 ? *this : -*this;
    }
    return *this;
}

bool StructureCoeffs::lex_less(const StructureCoeffs& o) const {
    if (alpha != o.alpha) return alpha < o.alpha;
    if (beta != o.beta) return beta < o.beta;
    return gamma < o.gamma;
}

double dist(const StructureCoeffs& a, const StructureCoeffs& b) {
    return (a.vec() - b.vec()).norm();
}

double dist_up_to_sign(const StructureCoeffs& a, const StructureCoeffs& b) {
    return std::min((a.vec() - b.vec()).norm(), (a.vec() + b.vec()).norm());
}

AdmissibleBasis::AdmissibleBasis(const Eigen::Matrix3d& mat) : C(mat) {
    if (!is_so3(mat)) {
        throw std::invalid_argument("admissible basis matrix is not in SO(3)");
    }
}

bool AdmissibleBasis::is_so3(const Eigen::Matrix3d& mat, double tol) {
    const double orth = (mat.transpose() * mat - Eigen::Matrix3d::Identity())
                            .cwiseAbs()
                            .maxCoeff();
    return orth <= tol && std::abs(mat.determinant() - 1.0) <= tol;
}

std::tuple<StructureCoeffs, StructureCoeffs, StructureCoeffs>
rotate_basis(const AdmissibleBasis& C) {
    return {C.I(), C.J(), C.K()};
}

AdmissibleBasis adapted_basis(const StructureCoeffs& A) {
    const Eigen::Vector3d a = A.vec().normalized();
    // complete with the coordinate axis least aligned with A
    int axis = 0;
    a.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[axis] = 1.0;
    const Eigen::Vector3d j = (e - a.dot(e) * a).normalized();
    const Eigen::Vector3d k = a.cross(j);
    Eigen::Matrix3d C;
    C.col(0) = a;
    C.col(1) = j;
    C.col(2) = k;
    return AdmissibleBasis(C);
}

HQSpace::HQSpace(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("quaternionic dimension must be positive");
}

void HQSpace::check_dim(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) {
        throw std::invalid_argument("vector length does not match ambient dimension 4n");
    }
}

Eigen::VectorXd HQSpace::apply_I(const Eigen::VectorXd& x) const {
    check_dim(x);
    Eigen::VectorXd y(x.size());
    for (int s = 0; s < n_; ++s) {
        const int o = 4 * s;
        y[o] = x[o + 1];
        y[o + 1] = -x[o];
        y[o + 2] = -x[o + 3];
        y[o + 3] = x[o + 2];
    }
    return y;
}

Eigen::VectorXd HQSpace::apply_J(const Eigen::VectorXd& x) const {
    check_dim(x);
    Eigen::VectorXd y(x.size());
    for (int s = 0; s < n_; ++s) {
        const int o = 4 * s;
        y[o] = x[o + 2];
        y[o + 1] = x[o + 3];
        y[o + 2] = -x[o];
        y[o + 3] = -x[o + 1];
    }
    return y;
}

Eigen::VectorXd HQSpace::apply_K(const Eigen::VectorXd& x) const {
    check_dim(x);
    Eigen::VectorXd y(x.size());
    for (int s = 0; s < n_; ++s) {
        const int o = 4 * s;
        y[o] = x[o + 3];
        y[o + 1] = -x[o + 2];
        y[o + 2] = x[o + 1];
        y[o + 3] = -x[o];
    }
    return y;
}

Eigen::VectorXd HQSpace::apply(const StructureCoeffs& A, const Eigen::VectorXd& x) const {
    return A.alpha * apply_I(x) + A.beta * apply_J(x) + A.gamma * apply_K(x);
}

Eigen::MatrixXd HQSpace::apply(const StructureCoeffs& A, const Eigen::MatrixXd& cols) const {
    Eigen::MatrixXd out(cols.rows(), cols.cols());
    for (int c = 0; c < cols.cols(); ++c) {
        out.col(c) = apply(A, Eigen::VectorXd(cols.col(c)));
    }
    return out;
}

Eigen::MatrixXd HQSpace::apply_I(const Eigen::MatrixXd& cols) const {
    Eigen::MatrixXd out(cols.rows(), cols.cols());
    for (int c = 0; c < cols.cols(); ++c) out.col(c) = apply_I(Eigen::VectorXd(cols.col(c)));
    return out;
}

Eigen::MatrixXd HQSpace::apply_J(const Eigen::MatrixXd& cols) const {
    Eigen::MatrixXd out(cols.rows(), cols.cols());
    for (int c = 0; c < cols.cols(); ++c) out.col(c) = apply_J(Eigen::VectorXd(cols.col(c)));
    return out;
}

Eigen::MatrixXd HQSpace::apply_K(const Eigen::MatrixXd& cols) const {
    Eigen::MatrixXd out(cols.rows(), cols.cols());
    for (int c = 0; c < cols.cols(); ++c) out.col(c) = apply_K(Eigen::VectorXd(cols.col(c)));
    return out;
}

Eigen::MatrixXd HQSpace::structure_matrix(const StructureCoeffs& A) const {
    Eigen::MatrixXd M(dim(), dim());
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    for (int c = 0; c < dim(); ++c) {
        e[c] = 1.0;
        M.col(c) = apply(A, e);
        e[c] = 0.0;
    }
    return M;
}

Quaternion HQSpace::hermitian_product(const Eigen::VectorXd& L, const Eigen::VectorXd& M) const {
    check_dim(L);
    check_dim(M);
    return {L.dot(M), L.dot(apply_I(M)), L.dot(apply_J(M)), L.dot(apply_K(M))};
}

Quaternion HQSpace::hermitian_product_coord(const Eigen::VectorXd& L,
                                            const Eigen::VectorXd& M) const {
    check_dim(L);
    check_dim(M);
    Quaternion acc;
    for (int s = 0; s < n_; ++s) {
        acc += slot(L, s).conj() * slot(M, s);
    }
    return acc;
}

Eigen::VectorXd HQSpace::right_multiply(const Eigen::VectorXd& x, const Quaternion& q) const {
    check_dim(x);
    Eigen::VectorXd y(x.size());
    for (int s = 0; s < n_; ++s) {
        set_slot(y, s, slot(x, s) * q);
    }
    return y;
}

Eigen::MatrixXd HQSpace::right_multiply(const Eigen::MatrixXd& cols, const Quaternion& q) const {
    Eigen::MatrixXd out(cols.rows(), cols.cols());
    for (int c = 0; c < cols.cols(); ++c) out.col(c) = right_multiply(Eigen::VectorXd(cols.col(c)), q);
    return out;
}

Quaternion HQSpace::slot(const Eigen::VectorXd& x, int a) const {
    const int o = 4 * a;
    return {x[o], x[o + 1], x[o + 2], x[o + 3]};
}

void HQSpace::set_slot(Eigen::VectorXd& x, int a, const Quaternion& q) const {
    const int o = 4 * a;
    x[o] = q.w;
    x[o + 1] = q.x;
    x[o + 2] = q.y;
    x[o + 3] = q.z;
}

Eigen::VectorXd HQSpace::e(int a) const {
    if (a < 0 || a >= n_) throw std::invalid_argument("slot index out of range");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
    v[4 * a] = 1.0;
    return v;
}

}  // namespace hqgrass
