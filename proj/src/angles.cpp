#include "hqgrass/angles.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "hqgrass/health.hpp"

namespace hqgrass {

double clamped_arccos(double c) {
    if (c > 1.0 + kClampHealthTol || c < -kClampHealthTol) {
        health::warn("cosine clamped from " + std::to_string(c));
    }
    return std::acos(std::min(1.0, std::max(0.0, c)));
}

PrincipalAngles principal_angles(const Frame& U, const Frame& W) {
    if (U.dim() == 0 || W.dim() == 0) {
        throw std::invalid_argument("principal angles need nonzero-dimensional subspaces");
    }
    const Eigen::MatrixXd M = U.basis().transpose() * W.basis();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const int k = std::min(U.dim(), W.dim());
    PrincipalAngles out;
    out.cosines = svd.singularValues().head(k).cwiseMin(1.0).cwiseMax(0.0);
    out.thetas.resize(k);
    for (int i = 0; i < k; ++i) out.thetas[i] = clamped_arccos(svd.singularValues()[i]);
    out.left = U.basis() * svd.matrixU().leftCols(k);
    out.right = W.basis() * svd.matrixV().leftCols(k);
    return out;
}

double subspace_angle(const Frame& U, const Frame& W) {
    if (U.dim() > W.dim()) {
        throw std::invalid_argument("subspace_angle requires dim U <= dim W");
    }
    const PrincipalAngles pa = principal_angles(U, W);
    double prod = 1.0;
    for (int i = 0; i < pa.count(); ++i) prod *= pa.cosines[i];
    return clamped_arccos(prod);
}

double kaehler_angle(const HQSpace& space, const StructureCoeffs& A,
                     const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
    const double gram = X.squaredNorm() * Y.squaredNorm() - X.dot(Y) * X.dot(Y);
    const double mis = std::sqrt(std::max(0.0, gram));
    if (mis <= 1e-12 * X.norm() * Y.norm()) {
        throw std::invalid_argument("Kaehler angle needs non-parallel generators");
    }
    const double c = X.dot(space.apply(A, Y)) / mis;
    return std::acos(std::min(1.0, std::max(-1.0, c)));
}

double hermitian_angle(const HQSpace& space, const Eigen::VectorXd& L,
                       const Eigen::VectorXd& M) {
    const double nl = L.norm(), nm = M.norm();
    if (nl == 0.0 || nm == 0.0) throw std::invalid_argument("hermitian angle of a zero vector");
    return clamped_arccos(space.hermitian_product(L, M).norm() / (nl * nm));
}

double characteristic_angle(const HQSpace& space, const Eigen::VectorXd& L,
                            const Eigen::VectorXd& M) {
    const double ch = std::cos(hermitian_angle(space, L, M));
    return clamped_arccos(ch * ch * ch * ch);
}

IsoclinicReport isoclinicity(const HQSpace& space, const StructureCoeffs& A,
                             const Frame& U, double tol) {
    IsoclinicReport rep;
    const int m = U.dim();
    if (m == 0) return rep;
    const Eigen::MatrixXd G = U.basis().transpose() * space.apply(A, U.basis());
    const Eigen::MatrixXd GGt = G * G.transpose();
    const double c2 = GGt.trace() / m;
    rep.deviation =
        (GGt - c2 * Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
    rep.isoclinic = rep.deviation < tol;
    rep.angle = clamped_arccos(std::sqrt(std::max(0.0, c2)));
    return rep;
}

double isoclinic_angle_trace(const HQSpace& space, const StructureCoeffs& A, const Frame& U) {
    if (U.dim() != 4) {
        throw std::invalid_argument("trace formula applies to 4-dimensional subspaces");
    }
    const Eigen::MatrixXd omega = U.basis().transpose() * space.apply(A, U.basis());
    const double c2 = -0.25 * (omega * omega).trace();
    return clamped_arccos(std::sqrt(std::max(0.0, c2)));
}

}  // namespace hqgrass
