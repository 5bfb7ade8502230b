#include "hqgrass/frame.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "hqgrass/health.hpp"

namespace hqgrass {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Deterministic in
// the input order, which keeps degenerate rank tests reproducible.
Eigen::MatrixXd mgs(const Eigen::MatrixXd& cols, double tol) {
    const int rows = static_cast<int>(cols.rows());
    Eigen::MatrixXd Q(rows, cols.cols());
    int r = 0;
    for (int c = 0; c < cols.cols(); ++c) {
        Eigen::VectorXd v = cols.col(c);
        for (int pass = 0; pass < 2; ++pass) {
            for (int q = 0; q < r; ++q) v -= Q.col(q).dot(v) * Q.col(q);
        }
        const double nrm = v.norm();
        if (nrm < tol) continue;
        Q.col(r++) = v / nrm;
    }
    return Q.leftCols(r);
}

}  // namespace

Frame Frame::from_orthonormal(const Eigen::MatrixXd& B) {
    Frame f;
    f.B_ = B;
    if (B.cols() > 0 && f.orthonormality_residual() > 1e-8) {
        throw std::invalid_argument("columns are not orthonormal");
    }
    return f;
}

Frame Frame::orthonormalize(const Eigen::MatrixXd& cols, double tol) {
    Frame f;
    f.B_ = mgs(cols, tol);
    return f;
}

Frame Frame::orthonormalize(int ambient_dim, const std::vector<Eigen::VectorXd>& vecs,
                            double tol) {
    Eigen::MatrixXd cols(ambient_dim, static_cast<int>(vecs.size()));
    for (int c = 0; c < static_cast<int>(vecs.size()); ++c) {
        if (vecs[c].size() != ambient_dim) {
            throw std::invalid_argument("vector length does not match ambient dimension");
        }
        cols.col(c) = vecs[c];
    }
    Frame f;
    f.B_ = mgs(cols, tol);
    return f;
}

Frame Frame::span_of(const Eigen::VectorXd& v) {
    Eigen::MatrixXd cols(v.size(), 1);
    cols.col(0) = v;
    return orthonormalize(cols);
}

Frame Frame::span_of(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    Eigen::MatrixXd cols(v.size(), 2);
    cols.col(0) = v;
    cols.col(1) = w;
    return orthonormalize(cols);
}

Eigen::VectorXd Frame::project(const Eigen::VectorXd& x) const {
    return B_ * (B_.transpose() * x);
}

double Frame::orthonormality_residual() const {
    if (dim() == 0) return 0.0;
    return (B_.transpose() * B_ - Eigen::MatrixXd::Identity(dim(), dim()))
        .cwiseAbs()
        .maxCoeff();
}

bool Frame::contains(const Eigen::VectorXd& x, double tol) const {
    return (x - project(x)).norm() <= tol * std::max(1.0, x.norm());
}

Frame intersect(const Frame& U, const Frame& W, double tol) {
    if (U.ambient_dim() != W.ambient_dim()) {
        throw std::invalid_argument("frames live in different ambient spaces");
    }
    if (U.dim() == 0 || W.dim() == 0) return Frame(U.ambient_dim());
    const Eigen::MatrixXd M = U.basis().transpose() * W.basis();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<Eigen::VectorXd> gens;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] >= 1.0 - tol) {
            // average the two sides of the near-zero principal angle
            const Eigen::VectorXd u = U.basis() * svd.matrixU().col(i);
            const Eigen::VectorXd w = W.basis() * svd.matrixV().col(i);
            gens.push_back(0.5 * (u + w));
        }
    }
    return Frame::orthonormalize(U.ambient_dim(), gens, tol);
}

Frame subspace_sum(const Frame& U, const Frame& W, double tol) {
    if (U.ambient_dim() != W.ambient_dim()) {
        throw std::invalid_argument("frames live in different ambient spaces");
    }
    Eigen::MatrixXd cols(U.ambient_dim(), U.dim() + W.dim());
    cols.leftCols(U.dim()) = U.basis();
    cols.rightCols(W.dim()) = W.basis();
    return Frame::orthonormalize(cols, tol);
}

Frame complement_in(const Frame& U, const Frame& W, double tol) {
    if (W.dim() == 0) return U;
    Eigen::MatrixXd cols = U.basis();
    const Eigen::MatrixXd P = W.projector();
    cols -= P * cols;
    return Frame::orthonormalize(cols, tol);
}

Frame quaternionify(const HQSpace& space, const Frame& U, double tol) {
    const int m = U.dim();
    Eigen::MatrixXd cols(U.ambient_dim(), 4 * m);
    cols.leftCols(m) = U.basis();
    cols.middleCols(m, m) = space.apply_I(U.basis());
    cols.middleCols(2 * m, m) = space.apply_J(U.basis());
    cols.rightCols(m) = space.apply_K(U.basis());
    return Frame::orthonormalize(cols, tol);
}

bool is_hermitian_orthogonal(const HQSpace& space, const Frame& U, const Frame& W,
                             double tol) {
    const Frame UH = quaternionify(space, U);
    const Frame WH = quaternionify(space, W);
    if (UH.dim() == 0 || WH.dim() == 0) return true;
    const Eigen::MatrixXd M = UH.basis().transpose() * WH.basis();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues().maxCoeff() <= tol;
}

double HFrame::gram_residual(const HQSpace& space) const {
    double worst = 0.0;
    for (int p = 0; p < size(); ++p) {
        for (int q = 0; q < size(); ++q) {
            const Quaternion g = space.hermitian_product(cols[p], cols[q]);
            const Quaternion expect = p == q ? Quaternion::one() : Quaternion{};
            worst = std::max(worst, dist(g, expect));
        }
    }
    return worst;
}

HFrame h_orthonormalize(const HQSpace& space, const std::vector<Eigen::VectorXd>& vecs,
                        double tol) {
    HFrame out;
    for (const auto& v0 : vecs) {
        Eigen::VectorXd v = v0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : out.cols) {
                const Quaternion c = space.hermitian_product(u, v);
                v -= space.right_multiply(u, c);
            }
        }
        const double nrm = v.norm();
        if (nrm < tol) continue;
        out.cols.push_back(v / nrm);
    }
    return out;
}

}  // namespace hqgrass
