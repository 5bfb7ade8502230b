#include "hqgrass/kaehler_form.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hqgrass/health.hpp"

namespace hqgrass {

SkewForm restrict_form(const HQSpace& space, const StructureCoeffs& A, const Frame& U) {
    SkewForm f;
    f.base = U;
    f.A = A;
    f.omega = U.basis().transpose() * space.apply(A, U.basis());
    // enforce exact skew-symmetry; the defect is fp noise
    f.omega = 0.5 * (f.omega - f.omega.transpose().eval());
    return f;
}

Eigen::MatrixXd StandardBasis::standard_matrix() const {
    const int m = static_cast<int>(rotation.rows());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
    for (int b = 0; b < static_cast<int>(sigmas.size()); ++b) {
        S(2 * b, 2 * b + 1) = sigmas[b];
        S(2 * b + 1, 2 * b) = -sigmas[b];
    }
    return S;
}

namespace {

// Leading k orthonormal directions of col(M) via pivoted QR; exact count.
Eigen::MatrixXd leading_directions(const Eigen::MatrixXd& M, int k) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(M.rows(), k);
    return Q;
}

}  // namespace

// Spectral route: S = -Omega^2 is symmetric PSD with eigenvalues sigma^2 in
// pairs. Peel off the top remaining direction v, pair it with
// w = Omega^T v / |.| (then omega(v, w) = |Omega^T v| >= 0), deflate by
// exactly two directions, repeat.
StandardBasis standard_basis(const SkewForm& form) {
    const int m = static_cast<int>(form.omega.rows());
    StandardBasis out;
    out.rotation.resize(m, m);

    const Eigen::MatrixXd S = -form.omega * form.omega;
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(m, m);  // remaining subspace, m x r
    int placed = 0;
    while (R.cols() >= 2 && placed + 2 <= m) {
        const Eigen::MatrixXd Sr = R.transpose() * S * R;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Sr);
        const int top = static_cast<int>(Sr.rows()) - 1;
        const double lambda = eig.eigenvalues()[top];
        if (lambda < kSnapTol * kSnapTol) break;  // rest of the form vanishes
        const Eigen::VectorXd v = R * eig.eigenvectors().col(top);
        Eigen::VectorXd w = form.omega.transpose() * v;
        // keep the partner inside the remaining subspace and orthogonal to v
        w = R * (R.transpose() * w);
        w -= v.dot(w) * v;
        const double wn = w.norm();
        if (wn < kSnapTol) break;
        w /= wn;
        const double entry = v.dot(form.omega * w);
        out.rotation.col(placed) = v;
        out.rotation.col(placed + 1) = entry >= 0 ? w : Eigen::VectorXd(-w);
        out.sigmas.push_back(std::abs(entry));
        placed += 2;
        if (static_cast<int>(R.cols()) == 2) {
            R.resize(m, 0);
            break;
        }
        const Eigen::MatrixXd Rn =
            R - v * (v.transpose() * R) - w * (w.transpose() * R);
        R = leading_directions(Rn, static_cast<int>(R.cols()) - 2);
    }
    // trailing zero block
    out.zero_dim = m - placed;
    if (out.zero_dim > 0) {
        if (static_cast<int>(R.cols()) != out.zero_dim) {
            health::warn("standard_basis: zero-block dimension mismatch");
        }
        // complete the placed columns to an orthonormal basis
        Eigen::MatrixXd fill(m, R.cols() + m);
        fill.leftCols(R.cols()) = R;
        fill.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
        const Eigen::MatrixXd done = out.rotation.leftCols(placed);
        fill -= done * (done.transpose() * fill);
        out.rotation.rightCols(out.zero_dim) = leading_directions(fill, out.zero_dim);
    }
    out.frame = Frame::from_orthonormal(form.base.basis() * out.rotation);
    return out;
}

std::vector<std::pair<double, Frame>> invariant_subspaces(const HQSpace& space,
                                                          const StructureCoeffs& A,
                                                          const Frame& U) {
    const StandardBasis sb = standard_basis(restrict_form(space, A, U));
    std::vector<std::pair<double, Frame>> out;
    const int nblocks = static_cast<int>(sb.sigmas.size());
    int b = 0;
    while (b < nblocks) {
        int e = b + 1;
        while (e < nblocks && sb.sigmas[e - 1] - sb.sigmas[e] < kClusterGap) ++e;
        if (e < nblocks) {
            const double gap = sb.sigmas[e - 1] - sb.sigmas[e];
            if (gap < 10 * kClusterGap) {
                health::warn("invariant_subspaces: near-degenerate sigma gap " +
                             std::to_string(gap));
            }
        }
        double mean = 0.0;
        for (int i = b; i < e; ++i) mean += sb.sigmas[i];
        mean /= (e - b);
        out.emplace_back(mean,
                         Frame::from_orthonormal(sb.frame.basis().middleCols(2 * b, 2 * (e - b))));
        b = e;
    }
    if (sb.zero_dim > 0) {
        out.emplace_back(0.0,
                         Frame::from_orthonormal(sb.frame.basis().rightCols(sb.zero_dim)));
    }
    return out;
}

Frame max_invariant_subspace(const HQSpace& space, const StructureCoeffs& A, const Frame& U,
                             double tol) {
    if (U.dim() == 0) return Frame(U.ambient_dim());
    const StandardBasis sb = standard_basis(restrict_form(space, A, U));
    int blocks = 0;
    while (blocks < static_cast<int>(sb.sigmas.size()) && sb.sigmas[blocks] >= 1.0 - tol) {
        ++blocks;
    }
    if (blocks == 0) return Frame(U.ambient_dim());
    Frame W = Frame::from_orthonormal(sb.frame.basis().leftCols(2 * blocks));
    // AW = W must hold for the snapped cluster
    const Eigen::MatrixXd M = W.basis().transpose() * space.apply(A, W.basis());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    if (svd.singularValues().minCoeff() < 1.0 - std::max(tol, 1e-6)) {
        health::warn("max_invariant_subspace: snapped cluster is not A-invariant");
    }
    return W;
}

}  // namespace hqgrass
