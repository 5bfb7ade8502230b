#include "hqgrass/orbit.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hqgrass/health.hpp"

namespace hqgrass {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd project_onto_image(const HQSpace& space, const StructureCoeffs& A,
                                   const Frame& U, const Eigen::VectorXd& x) {
    const Eigen::MatrixXd AB = space.apply(A, U.basis());  // orthonormal frame of AU
    return AB * (AB.transpose() * x);
}

}  // namespace

Quaternion imaginary_measure(const HQSpace& space, const Eigen::VectorXd& X,
                             const Eigen::VectorXd& Y) {
    const double gram = X.squaredNorm() * Y.squaredNorm() - X.dot(Y) * X.dot(Y);
    const double mis = std::sqrt(std::max(0.0, gram));
    if (mis <= 1e-12 * X.norm() * Y.norm()) {
        throw std::invalid_argument("imaginary measure needs independent generators");
    }
    return space.hermitian_product(X, Y).im() / mis;
}

double characteristic_deviation(const HQSpace& space, const Frame& U) {
    const int m = U.dim();
    if (m < 2) throw std::invalid_argument("characteristic deviation needs dim >= 2");
    double acc = 0.0;
    for (int r = 0; r < m; ++r) {
        for (int s = r + 1; s < m; ++s) {
            acc += space.hermitian_product(U.col(r), U.col(s)).im().norm_sq();
        }
    }
    return acc / (0.5 * m * (m - 1));
}

double characteristic_deviation(const HQSpace& space, const AdmissibleBasis& basis,
                                const Frame& U) {
    const int m = U.dim();
    if (m < 2) throw std::invalid_argument("characteristic deviation needs dim >= 2");
    double acc = 0.0;
    for (int r = 0; r < m; ++r) {
        for (int s = r + 1; s < m; ++s) {
            const Eigen::VectorXd x = U.col(r), y = U.col(s);
            const Eigen::Vector3d im{x.dot(space.apply(basis.I(), y)),
                                     x.dot(space.apply(basis.J(), y)),
                                     x.dot(space.apply(basis.K(), y))};
            acc += im.squaredNorm();
        }
    }
    return acc / (0.5 * m * (m - 1));
}

std::string to_string(SubspaceClass c) {
    switch (c) {
        case SubspaceClass::TwoPlane: return "two_plane";
        case SubspaceClass::Quaternionic: return "quaternionic";
        case SubspaceClass::Ic4: return "isoclinic4";
        case SubspaceClass::PureComplex: return "complex";
        case SubspaceClass::SigmaComplex: return "sigma_complex";
        case SubspaceClass::TotallyReal: return "totally_real";
        case SubspaceClass::Other: return "other";
    }
    return "other";
}

namespace {

bool all_hermitian_products_real(const HQSpace& space, const Frame& U, double tol) {
    for (int r = 0; r < U.dim(); ++r) {
        for (int s = r + 1; s < U.dim(); ++s) {
            if (space.hermitian_product(U.col(r), U.col(s)).im_norm() > tol) return false;
        }
    }
    return true;
}

bool triple_isoclinic(const HQSpace& space, const Frame& U, double tol) {
    for (const auto& A :
         {StructureCoeffs::I(), StructureCoeffs::J(), StructureCoeffs::K()}) {
        if (!isoclinicity(space, A, U, tol).isoclinic) return false;
    }
    return true;
}

}  // namespace

Classification classify(const HQSpace& space, const Frame& U, double tol) {
    Classification out;
    out.rhps = U.dim() > 0 && all_hermitian_products_real(space, U, 1e-8);
    if (U.dim() == 0) {
        out.cls = SubspaceClass::Other;
        return out;
    }
    if (U.dim() == 2) {
        out.cls = SubspaceClass::TwoPlane;
        return out;
    }
    out.decomposition = full_decompose(space, U, tol);
    const Decomposition& d = out.decomposition;
    if (d.U_Q.dim() == U.dim()) {
        out.cls = SubspaceClass::Quaternionic;
    } else if (d.U_Q.dim() == 0 && d.U_R.dim() == 0 && d.sigma.size() == 1) {
        out.cls = SubspaceClass::PureComplex;
    } else if (d.U_Q.dim() == 0 && d.U_R.dim() == 0 && d.sigma.size() >= 2) {
        out.cls = SubspaceClass::SigmaComplex;
    } else if (out.rhps) {
        out.cls = SubspaceClass::TotallyReal;
    } else if (U.dim() == 4 && triple_isoclinic(space, U, std::max(tol, 1e-8))) {
        out.cls = SubspaceClass::Ic4;
    } else {
        out.cls = SubspaceClass::Other;
    }
    return out;
}

namespace {

// Chains plus the scalar data read off them.
struct ChainData {
    Chains chains;
    double cI = 0.0, cJ = 0.0, cK = 0.0;
    double xi = 1.0, chi = 1.0, eta = 1.0;
};

ChainData build_chain_data(const HQSpace& space, const AdmissibleBasis& basis,
                           const Frame& U, const Eigen::VectorXd& X1_in, double tol) {
    if (U.dim() != 4) {
        throw std::invalid_argument("chains are defined for 4-dimensional subspaces");
    }
    Eigen::VectorXd X1 = X1_in;
    if ((X1 - U.project(X1)).norm() > 1e-6 * X1.norm()) {
        throw std::invalid_argument("leading vector does not lie in the subspace");
    }
    X1.normalize();

    const StructureCoeffs I = basis.I(), J = basis.J(), K = basis.K();
    for (const auto& A : {I, J, K}) {
        if (!isoclinicity(space, A, U, std::max(tol, 1e-6)).isoclinic) {
            throw std::invalid_argument("chains require an isoclinic subspace");
        }
    }

    ChainData cd;
    cd.cI = std::cos(isoclinic_angle_trace(space, I, U));
    cd.cJ = std::cos(isoclinic_angle_trace(space, J, U));
    cd.cK = std::cos(isoclinic_angle_trace(space, K, U));
    const double snap = std::max(tol, kSnapTol);

    const bool defI = cd.cI > snap, defJ = cd.cJ > snap, defK = cd.cK > snap;
    auto second_from = [&](const StructureCoeffs& A, const Eigen::VectorXd& lead_vec) {
        // A^{-1} Pr^{AU} v / cos theta^A, normalized against the actual norm
        Eigen::VectorXd v = -space.apply(A, project_onto_image(space, A, U, lead_vec));
        const double nrm = v.norm();
        return Eigen::VectorXd(v / nrm);
    };

    Eigen::VectorXd X2, Y2, Z2;
    if (defI) X2 = second_from(I, X1);
    if (defJ) Y2 = second_from(J, X1);
    if (defK) Z2 = second_from(K, X1);

    cd.xi = (defI && defJ) ? X2.dot(Y2) : 1.0;
    cd.chi = (defI && defK) ? X2.dot(Z2) : 1.0;
    cd.eta = (defJ && defK) ? Y2.dot(Z2) : 1.0;

    const bool degenerate = !defI || !defJ || !defK || std::abs(cd.xi) >= 1.0 - snap ||
                            std::abs(cd.chi) >= 1.0 - snap ||
                            std::abs(cd.eta) >= 1.0 - snap;
    Chains& ch = cd.chains;
    ch.degenerate = degenerate;

    if (degenerate) {
        // 2-planes-decomposable / orthogonal branch: one shared standard basis,
        // the other chains differ only by the snapped signs.
        auto snap_pm1 = [&](double v, bool defined) {
            if (!defined) return 1.0;
            if (std::abs(std::abs(v) - 1.0) > 1e-6) {
                health::warn("chains: degenerate branch with invariant away from +-1: " +
                             std::to_string(v));
            }
            return v >= 0 ? 1.0 : -1.0;
        };
        const double sxi = snap_pm1(cd.xi, defI && defJ);
        const double schi = snap_pm1(cd.chi, defI && defK);
        const double seta = snap_pm1(cd.eta, defJ && defK);
        cd.xi = sxi;
        cd.chi = schi;
        cd.eta = seta;

        // base the shared standard basis on the structure with the largest cosine
        const StructureCoeffs lead = (defI || (!defJ && !defK)) ? I : (defJ ? J : K);
        const bool lead_def = defI || defJ || defK;
        // a standard basis of the lead form with prescribed leading vector
        const Eigen::VectorXd B1 = X1;
        Eigen::VectorXd B2;
        if (lead_def) {
            B2 = second_from(lead, X1);
        } else {
            // the form vanishes identically (triple orthogonality): any
            // orthonormal completion is standard
            B2 = complement_in(U, Frame::span_of(X1), 1e-10).col(0);
        }
        const Frame rest = complement_in(U, Frame::span_of(B1, B2), 1e-10);
        const Eigen::VectorXd B3 = rest.col(0);
        const Eigen::VectorXd B4 = lead_def ? second_from(lead, B3) : rest.col(1);
        ch.X = {B1, B2, B3, B4};
        ch.Xt = ch.X;
        ch.Y = {B1, sxi * B2, B3, sxi * B4};
        ch.Yt = ch.Y;
        ch.Z = {B1, schi * B2, B3, schi * B4};
        ch.Zt = ch.Z;
        return cd;
    }

    const double rxi = std::sqrt(1.0 - cd.xi * cd.xi);
    const double rchi = std::sqrt(1.0 - cd.chi * cd.chi);
    const double reta = std::sqrt(1.0 - cd.eta * cd.eta);

    auto third_vector = [&](const StructureCoeffs& A, const Eigen::VectorXd& fourth) {
        // -A^{-1} Pr^{AU} v / cos theta^A = A Pr^{AU} v / cos theta^A
        Eigen::VectorXd v = space.apply(A, project_onto_image(space, A, U, fourth));
        return Eigen::VectorXd(v / v.norm());
    };

    const Eigen::VectorXd X4 = (Y2 - cd.xi * X2) / rxi;
    const Eigen::VectorXd X3 = third_vector(I, X4);
    const Eigen::VectorXd Y4 = (-X2 + cd.xi * Y2) / rxi;
    const Eigen::VectorXd Y3 = third_vector(J, Y4);
    if ((X3 - Y3).norm() > 1e-6) health::warn("chains: X3 and Y3 disagree");

    const Eigen::VectorXd Xt4 = (Z2 - cd.chi * X2) / rchi;
    const Eigen::VectorXd Xt3 = third_vector(I, Xt4);
    const Eigen::VectorXd Z4 = (-X2 + cd.chi * Z2) / rchi;
    const Eigen::VectorXd Z3 = third_vector(K, Z4);
    if ((Xt3 - Z3).norm() > 1e-6) health::warn("chains: Xt3 and Z3 disagree");

    const Eigen::VectorXd Yt4 = (Z2 - cd.eta * Y2) / reta;
    const Eigen::VectorXd Yt3 = third_vector(J, Yt4);
    const Eigen::VectorXd Zt4 = (-Y2 + cd.eta * Z2) / reta;
    const Eigen::VectorXd Zt3 = third_vector(K, Zt4);
    if ((Yt3 - Zt3).norm() > 1e-6) health::warn("chains: Yt3 and Zt3 disagree");

    ch.X = {X1, X2, X3, X4};
    ch.Y = {X1, Y2, X3, Y4};
    ch.Xt = {X1, X2, Xt3, Xt4};
    ch.Z = {X1, Z2, Xt3, Z4};
    ch.Yt = {X1, Y2, Yt3, Yt4};
    ch.Zt = {X1, Z2, Yt3, Zt4};
    return cd;
}

}  // namespace

Chains build_chains(const HQSpace& space, const AdmissibleBasis& basis, const Frame& U,
                    const Eigen::VectorXd& X1, double tol) {
    return build_chain_data(space, basis, U, X1, tol).chains;
}

Eigen::Matrix4d canonical_C_IJ(double xi) {
    const double r = std::sqrt(std::max(0.0, 1.0 - xi * xi));
    Eigen::Matrix4d C;
    C << 1, 0, 0, 0,
         0, xi, 0, -r,
         0, 0, 1, 0,
         0, r, 0, xi;
    return C;
}

Eigen::Matrix4d canonical_C_IK(double chi, double Gamma, double Delta) {
    const double r = std::sqrt(std::max(0.0, 1.0 - chi * chi));
    Eigen::Matrix4d C;
    C << 1, 0, 0, 0,
         0, chi, 0, -r,
         0, -Delta * r, Gamma, -chi * Delta,
         0, Gamma * r, Delta, chi * Gamma;
    return C;
}

Ic4Invariants ic4_invariants(const HQSpace& space, const AdmissibleBasis& basis,
                             const Frame& U, double tol) {
    const ChainData cd = build_chain_data(space, basis, U, U.col(0), tol);
    Ic4Invariants out;
    out.theta_I = clamped_arccos(cd.cI);
    out.theta_J = clamped_arccos(cd.cJ);
    out.theta_K = clamped_arccos(cd.cK);
    out.xi = cd.xi;
    out.chi = cd.chi;
    out.eta = cd.eta;
    if (cd.chains.degenerate) {
        out.Gamma = 1.0;
        out.Delta = 0.0;
    } else {
        out.Gamma = (cd.eta - cd.xi * cd.chi) /
                    (std::sqrt(1.0 - cd.xi * cd.xi) * std::sqrt(1.0 - cd.chi * cd.chi));
        out.Delta = cd.chains.X[3].dot(cd.chains.Xt[2]);
        if (std::abs(out.Gamma * out.Gamma + out.Delta * out.Delta - 1.0) > 1e-7) {
            health::warn("ic4_invariants: Gamma^2 + Delta^2 differs from 1");
        }
    }
    out.C_IJ = canonical_C_IJ(out.xi);
    out.C_IK = canonical_C_IK(out.chi, out.Gamma, out.Delta);

    // cross-check against the Gram matrices of the chains
    Eigen::Matrix4d direct_IJ, direct_IK;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            direct_IJ(i, j) = cd.chains.X[i].dot(cd.chains.Y[j]);
            direct_IK(i, j) = cd.chains.X[i].dot(cd.chains.Z[j]);
        }
    }
    const double dev = std::max((direct_IJ - out.C_IJ).cwiseAbs().maxCoeff(),
                                (direct_IK - out.C_IK).cwiseAbs().maxCoeff());
    if (dev > 1e-8) {
        health::warn("ic4_invariants: canonical matrices deviate from chain Grams by " +
                     std::to_string(dev));
    }
    return out;
}

double i_perp_kaehler_angle(const HQSpace& space, const StructureCoeffs& I, const Frame& U,
                            double tol) {
    if (U.dim() != 4) {
        throw std::invalid_argument("the I-perp Kaehler angle needs a 4-dimensional subspace");
    }
    {
        const Eigen::MatrixXd M = U.basis().transpose() * space.apply(I, U.basis());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        if (svd.singularValues().minCoeff() < 1.0 - std::max(tol, 1e-7)) {
            throw std::invalid_argument("subspace is not I-complex");
        }
    }
    const AdmissibleBasis adapted = adapted_basis(I);
    const Eigen::VectorXd X = U.col(0);
    const Frame comp = complement_in(U, Frame::span_of(X, space.apply(I, X)));
    if (comp.dim() < 1) throw std::invalid_argument("degenerate I-complex frame");
    const Eigen::VectorXd Y = comp.col(0);
    const double a = X.dot(space.apply(adapted.K(), Y));
    const double b = X.dot(space.apply(adapted.J(), Y));
    return clamped_arccos(std::hypot(a, b));
}

Frame associated_plane(const HQSpace& space, const StructureCoeffs& I, const Frame& U,
                       const Eigen::VectorXd& X, const StructureCoeffs& K, double tol) {
    if (std::abs(I.vec().dot(K.vec())) > 1e-8 || std::abs(K.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("K must be a unit structure anticommuting with I");
    }
    Eigen::VectorXd p = project_onto_image(space, K, U, X);
    const double c = p.norm() / X.norm();
    if (c <= std::max(tol, kSnapTol)) {
        throw std::invalid_argument("associated plane undefined for a totally complex subspace");
    }
    Eigen::VectorXd Z = -space.apply(K, p);
    Z /= Z.norm();
    return Frame::span_of(X.normalized(), Z);
}

SubspaceClass OrbitInvariant::cls() const {
    switch (data.index()) {
        case 0: return SubspaceClass::TwoPlane;
        case 1: return SubspaceClass::Ic4;
        case 2: return SubspaceClass::Quaternionic;
        case 3: return SubspaceClass::PureComplex;
        case 4: return SubspaceClass::SigmaComplex;
        default: return SubspaceClass::TotallyReal;
    }
}

OrbitInvariant orbit_invariant(const HQSpace& space, const AdmissibleBasis& basis,
                               const Frame& U, double tol) {
    const Classification c = classify(space, U, tol);
    OrbitInvariant out;
    switch (c.cls) {
        case SubspaceClass::TwoPlane:
            out.data = TwoPlaneInvariant{imaginary_measure(space, U.col(0), U.col(1))};
            return out;
        case SubspaceClass::Quaternionic:
            out.data = QuaternionicInvariant{U.dim()};
            return out;
        case SubspaceClass::PureComplex: {
            const StructureCoeffs I = c.decomposition.sigma.front().I;
            out.data = ComplexInvariant{I, kaehler_multiangle(space, I, U, tol)};
            return out;
        }
        case SubspaceClass::SigmaComplex: {
            SigmaComplexInvariant s;
            for (const auto& addend : c.decomposition.sigma) {
                s.items.push_back(ComplexInvariant{
                    addend.I, kaehler_multiangle(space, addend.I, addend.U, tol)});
            }
            out.data = std::move(s);
            return out;
        }
        case SubspaceClass::Ic4:
            out.data = Ic4Invariant{ic4_invariants(space, basis, U, tol)};
            return out;
        case SubspaceClass::TotallyReal:
            if (c.rhps) {
                out.data = RhpsInvariant{U.dim()};
                return out;
            }
            [[fallthrough]];
        default:
            throw std::invalid_argument("orbit invariant unsupported for class " +
                                        to_string(c.cls));
    }
}

namespace {

double vec_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double complex_distance(const ComplexInvariant& a, const ComplexInvariant& b) {
    return std::max(dist_up_to_sign(a.I, b.I), vec_distance(a.multiangle, b.multiangle));
}

}  // namespace

double invariant_distance(const OrbitInvariant& a, const OrbitInvariant& b) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.data.index() != b.data.index()) return inf;
    if (const auto* ta = std::get_if<TwoPlaneInvariant>(&a.data)) {
        const auto& tb = std::get<TwoPlaneInvariant>(b.data);
        return std::min(dist(ta->im, tb.im), dist(ta->im, -tb.im));
    }
    if (const auto* ia = std::get_if<Ic4Invariant>(&a.data)) {
        const auto& ib = std::get<Ic4Invariant>(b.data).inv;
        const auto& iv = ia->inv;
        double worst = 0.0;
        for (double d : {iv.theta_I - ib.theta_I, iv.theta_J - ib.theta_J,
                         iv.theta_K - ib.theta_K, iv.xi - ib.xi, iv.chi - ib.chi,
                         iv.eta - ib.eta, iv.Delta - ib.Delta}) {
            worst = std::max(worst, std::abs(d));
        }
        return worst;
    }
    if (const auto* qa = std::get_if<QuaternionicInvariant>(&a.data)) {
        return qa->dim == std::get<QuaternionicInvariant>(b.data).dim ? 0.0 : inf;
    }
    if (const auto* ca = std::get_if<ComplexInvariant>(&a.data)) {
        return complex_distance(*ca, std::get<ComplexInvariant>(b.data));
    }
    if (const auto* sa = std::get_if<SigmaComplexInvariant>(&a.data)) {
        const auto& sb = std::get<SigmaComplexInvariant>(b.data);
        if (sa->items.size() != sb.items.size()) return inf;
        double worst = 0.0;
        for (size_t i = 0; i < sa->items.size(); ++i) {
            worst = std::max(worst, complex_distance(sa->items[i], sb.items[i]));
        }
        return worst;
    }
    const auto& ra = std::get<RhpsInvariant>(a.data);
    return ra.dim == std::get<RhpsInvariant>(b.data).dim ? 0.0 : inf;
}

bool same_orbit(const HQSpace& space, const AdmissibleBasis& basis, const Frame& U,
                const Frame& W, double tol, double class_tol) {
    if (U.dim() != W.dim()) {
        throw std::invalid_argument("same_orbit: dimension mismatch");
    }
    const OrbitInvariant iu = orbit_invariant(space, basis, U, class_tol);
    const OrbitInvariant iw = orbit_invariant(space, basis, W, class_tol);
    return invariant_distance(iu, iw) <= tol;
}

namespace {

// Canonical real basis whose Hermitian Gram matrix is a function of the orbit
// invariant only, so matched constructions on U and W can be carried onto
// each other by an H-linear isometry.
std::vector<Eigen::VectorXd> canonical_vectors(const HQSpace& space,
                                               const AdmissibleBasis& basis, const Frame& U,
                                               const OrbitInvariant& ref, double tol) {
    std::vector<Eigen::VectorXd> out;
    switch (ref.cls()) {
        case SubspaceClass::TwoPlane: {
            Eigen::VectorXd L = U.col(0), M = U.col(1);
            const Quaternion im = imaginary_measure(space, L, M);
            const Quaternion target = std::get<TwoPlaneInvariant>(ref.data).im;
            if (dist(im, target) > dist(-im, target)) M = -M;
            out = {L, M};
            return out;
        }
        case SubspaceClass::Ic4: {
            const Chains ch = build_chains(space, basis, U, U.col(0), tol);
            out.assign(ch.X.begin(), ch.X.end());
            return out;
        }
        case SubspaceClass::Quaternionic: {
            std::vector<Eigen::VectorXd> cols;
            for (int c = 0; c < U.dim(); ++c) cols.push_back(U.col(c));
            const HFrame hf = h_orthonormalize(space, cols);
            for (const auto& u : hf.cols) {
                out.push_back(u);
                out.push_back(-space.apply_I(u));
                out.push_back(-space.apply_K(u));
                out.push_back(-space.apply_J(u));
            }
            return out;
        }
        case SubspaceClass::PureComplex: {
            const auto& ci = std::get<ComplexInvariant>(ref.data);
            const StructureCoeffs I = ci.I;
            const AdmissibleBasis adapted = adapted_basis(I);
            for (const auto& [theta, addend] : decompose_complex(space, I, U, tol)) {
                const Eigen::VectorXd X1 = addend.col(0);
                const Eigen::VectorXd IX1 = space.apply(I, X1);
                if (addend.dim() == 2) {
                    out.push_back(X1);
                    out.push_back(-IX1);
                    continue;
                }
                if (theta < kPi / 2.0 - kSnapTol) {
                    const StructureCoeffs K = adapted.K();
                    Eigen::VectorXd Z =
                        -space.apply(K, project_onto_image(space, K, addend, X1));
                    Z /= Z.norm();
                    out.push_back(X1);
                    out.push_back(-IX1);
                    out.push_back(Z);
                    out.push_back(-space.apply(I, Z));
                } else {
                    const Eigen::VectorXd X3 =
                        complement_in(addend, Frame::span_of(X1, IX1)).col(0);
                    out.push_back(X1);
                    out.push_back(-IX1);
                    out.push_back(X3);
                    out.push_back(-space.apply(I, X3));
                }
            }
            return out;
        }
        case SubspaceClass::SigmaComplex: {
            const auto& si = std::get<SigmaComplexInvariant>(ref.data);
            const Decomposition d = full_decompose(space, U, tol);
            if (d.sigma.size() != si.items.size()) {
                throw std::runtime_error("witness: addend count mismatch");
            }
            for (size_t i = 0; i < d.sigma.size(); ++i) {
                OrbitInvariant sub;
                sub.data = si.items[i];
                const auto part =
                    canonical_vectors(space, basis, d.sigma[i].U, sub, tol);
                out.insert(out.end(), part.begin(), part.end());
            }
            return out;
        }
        default: {  // r.h.p.s.
            for (int c = 0; c < U.dim(); ++c) out.push_back(U.col(c));
            return out;
        }
    }
}

}  // namespace

std::optional<SpnWitness> sp_n_witness(const HQSpace& space, const AdmissibleBasis& basis,
                                       const Frame& U, const Frame& W, double tol) {
    if (!same_orbit(space, basis, U, W)) {
        throw std::invalid_argument("sp_n_witness requires subspaces in the same orbit");
    }
    const OrbitInvariant ref = orbit_invariant(space, basis, U);

    auto h_basis_through = [&](const Frame& S) {
        std::vector<Eigen::VectorXd> vecs = canonical_vectors(space, basis, S, ref, kSnapTol);
        HFrame hf = h_orthonormalize(space, vecs, 1e-8);
        for (int a = 0; a < space.n() && hf.size() < space.n(); ++a) {
            Eigen::VectorXd v = space.e(a);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& u : hf.cols) {
                    v -= space.right_multiply(u, space.hermitian_product(u, v));
                }
            }
            if (v.norm() < 1e-8) continue;
            hf.cols.push_back(v / v.norm());
        }
        return hf;
    };

    const HFrame hu = h_basis_through(U);
    const HFrame hw = h_basis_through(W);
    if (hu.size() != space.n() || hw.size() != space.n()) {
        health::warn("sp_n_witness: could not extend to a full H-basis");
        return std::nullopt;
    }

    SpnWitness wit;
    wit.g = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (int q = 0; q < space.n(); ++q) {
        const Eigen::VectorXd &u = hu.cols[q], &w = hw.cols[q];
        wit.g += w * u.transpose();
        wit.g += space.apply_I(w) * space.apply_I(u).transpose();
        wit.g += space.apply_J(w) * space.apply_J(u).transpose();
        wit.g += space.apply_K(w) * space.apply_K(u).transpose();
    }

    wit.orthogonality_residual =
        (wit.g.transpose() * wit.g - Eigen::MatrixXd::Identity(space.dim(), space.dim()))
            .cwiseAbs()
            .maxCoeff();
    int c = 0;
    for (const auto& A :
         {StructureCoeffs::I(), StructureCoeffs::J(), StructureCoeffs::K()}) {
        const Eigen::MatrixXd S = space.structure_matrix(A);
        wit.commutator_norms[c++] = (wit.g * S - S * wit.g).cwiseAbs().maxCoeff();
    }
    const Frame gU = Frame::orthonormalize(wit.g * U.basis());
    wit.max_principal_angle = principal_angles(gU, W).thetas.maxCoeff();

    if (wit.orthogonality_residual > 1e-9 || wit.commutator_norms.maxCoeff() > 1e-9 ||
        wit.max_principal_angle > tol) {
        health::warn("sp_n_witness: verification failed (angle " +
                     std::to_string(wit.max_principal_angle) + ")");
        return std::nullopt;
    }
    return wit;
}

}  // namespace hqgrass
