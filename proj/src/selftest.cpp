#include "hqgrass/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hqgrass/json_io.hpp"
#include "hqgrass/lab.hpp"
#include "hqgrass/orbit.hpp"

namespace hqgrass {

namespace {

constexpr double kPi = 3.14159265358979323846;

using lab::Rng;

struct Check {
    double worst = 0.0;
    void see(double residual) { worst = std::max(worst, std::abs(residual)); }
};

// sin of the largest principal angle; stable near coincident subspaces where
// arccos of a singular value bottoms out at ~1e-8
double subspace_gap(const Frame& A, const Frame& B) {
    if (A.dim() != B.dim()) return 1.0;
    if (A.dim() == 0) return 0.0;
    const Eigen::MatrixXd ra = A.basis() - B.projector() * A.basis();
    const Eigen::MatrixXd rb = B.basis() - A.projector() * B.basis();
    return std::max(ra.colwise().norm().maxCoeff(), rb.colwise().norm().maxCoeff());
}

Eigen::MatrixXd random_rotation(int m, Rng& rng) {
    Eigen::MatrixXd A(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) A(r, c) = rng.gaussian();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    return Q;
}

// ----- criterion bodies ------------------------------------------------

CriterionResult c1_structure_algebra(const HQSpace& space, Rng rng) {
    Check chk;
    const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(space.dim(), space.dim());
    for (int t = 0; t < 200; ++t) {
        const StructureCoeffs A = lab::random_structure(rng);
        const Eigen::MatrixXd M = space.structure_matrix(A);
        chk.see((M * M + Id).cwiseAbs().maxCoeff());
        chk.see((M.transpose() * M - Id).cwiseAbs().maxCoeff());
    }
    for (int t = 0; t < 200; ++t) {
        const AdmissibleBasis basis = lab::random_admissible_basis(rng);
        const Eigen::MatrixXd Ip = space.structure_matrix(basis.I());
        const Eigen::MatrixXd Jp = space.structure_matrix(basis.J());
        const Eigen::MatrixXd Kp = space.structure_matrix(basis.K());
        chk.see((Ip * Jp - Kp).cwiseAbs().maxCoeff());
    }
    return {1, "structure-algebra", false, chk.worst, 1e-12, "A^2+Id, A^tA-Id, I'J'-K'"};
}

CriterionResult c2_hermitian_consistency(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 1000; ++t) {
        const Eigen::VectorXd L = lab::random_unit_vector(space, rng);
        const Eigen::VectorXd M = lab::random_unit_vector(space, rng);
        chk.see(dist(space.hermitian_product(L, M), space.hermitian_product_coord(L, M)));
    }
    for (int t = 0; t < 50; ++t) {
        const AdmissibleBasis basis = lab::random_admissible_basis(rng);
        const Eigen::VectorXd L = lab::random_unit_vector(space, rng);
        const Eigen::VectorXd M = lab::random_unit_vector(space, rng);
        const Quaternion std_q = space.hermitian_product(L, M);
        const Eigen::Vector3d rot_im{L.dot(space.apply(basis.I(), M)),
                                     L.dot(space.apply(basis.J(), M)),
                                     L.dot(space.apply(basis.K(), M))};
        const Eigen::Vector3d std_im{std_q.x, std_q.y, std_q.z};
        chk.see(std::abs(L.dot(M) - std_q.re()));
        chk.see(std::abs(rot_im.norm() - std_im.norm()));
        chk.see((rot_im - basis.C.transpose() * std_im).cwiseAbs().maxCoeff());
    }
    return {2, "hermitian-product-consistency", false, chk.worst, 1e-12,
            "coordinate formula vs structure formula, rotated-basis law"};
}

CriterionResult c3_principal_angles(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 500; ++t) {
        const int p = 1 + static_cast<int>(rng.next_u64() % 6);
        const int q = std::min(8, p + static_cast<int>(rng.next_u64() % 6));
        const Frame U = lab::random_subspace(space, p, rng);
        const Frame W = lab::random_subspace(space, q, rng);
        const PrincipalAngles engine = principal_angles(U, W);
        const PrincipalAngles oracle = lab::oracle_principal_angles(U, W);
        chk.see((engine.thetas - oracle.thetas).cwiseAbs().maxCoeff());
        chk.see(std::cos(subspace_angle(U, W)) - std::cos(lab::oracle_subspace_angle(U, W)));
        // Afriat: related principal vectors with non-negative pairings
        for (int i = 0; i < engine.count(); ++i) {
            chk.see(std::min(0.0, engine.left.col(i).dot(engine.right.col(i))));
        }
    }
    return {3, "principal-angle-engine-vs-oracle", false, chk.worst, 1e-9,
            "SVD route vs eigenvalue oracle, product-of-cosines identity"};
}

CriterionResult c4_isoclinic_formulas(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 100; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = rng.uniform(0.0, kPi / 2.0);
        const Frame U = lab::make_complex4(space, I, theta, 0);
        const AdmissibleBasis adapted = adapted_basis(I);
        const Ic4Invariants inv = ic4_invariants(space, adapted, U);
        const double cI = std::cos(inv.theta_I), cJ = std::cos(inv.theta_J),
                     cK = std::cos(inv.theta_K);
        Rng sub = rng.split(t);
        for (int a = 0; a < 500; ++a) {
            const StructureCoeffs coeffs = lab::random_structure(sub);  // adapted coords
            const double a1 = coeffs.alpha, a2 = coeffs.beta, a3 = coeffs.gamma;
            const StructureCoeffs A =
                StructureCoeffs::from_vec(adapted.C * coeffs.vec());
            const double r_trace = std::cos(isoclinic_angle_trace(space, A, U));
            const double c2 = a1 * a1 * cI * cI + a2 * a2 * cJ * cJ + a3 * a3 * cK * cK +
                              2 * inv.xi * a1 * a2 * cI * cJ + 2 * inv.chi * a1 * a3 * cI * cK +
                              2 * inv.eta * a2 * a3 * cJ * cK;
            const double r_exp = std::sqrt(std::max(0.0, c2));
            const double r_closed =
                std::sqrt(a1 * a1 + (1.0 - a1 * a1) * std::cos(theta) * std::cos(theta));
            const Eigen::MatrixXd G =
                U.basis().transpose() * space.apply(A, U.basis());
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
            const double r_svd = svd.singularValues().mean();
            chk.see(r_trace - r_exp);
            chk.see(r_trace - r_closed);
            chk.see(r_trace - r_svd);
            chk.see(r_exp - r_svd);
            chk.see(r_closed - r_svd);
        }
    }
    return {4, "isoclinic-angle-formulas", false, chk.worst, 1e-8,
            "trace, xi-chi-eta expansion, closed form, direct SVD"};
}

CriterionResult c5_complex4_invariants(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 40; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = rng.uniform(0.02, kPi / 2.0 - 0.02);
        Frame U = lab::make_complex4(space, I, theta, 0);
        if (t % 2 == 1) {
            const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
            U = Frame::orthonormalize(g * U.basis(), 1e-10);
        }
        const Ic4Invariants inv = ic4_invariants(space, adapted_basis(I), U);
        for (double v : {inv.xi, inv.chi, inv.eta, inv.Gamma, inv.Delta + 1.0}) chk.see(v);
        chk.see((inv.C_IJ - canonical_C_IJ(0.0)).cwiseAbs().maxCoeff());
        chk.see((inv.C_IK - canonical_C_IK(0.0, 0.0, -1.0)).cwiseAbs().maxCoeff());
    }
    for (int t = 0; t < 10; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, kPi / 2.0, 0);
        const Ic4Invariants inv = ic4_invariants(space, adapted_basis(I), U);
        chk.see((inv.C_IJ - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());
        chk.see((inv.C_IK - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());
        for (double v : {inv.xi - 1.0, inv.chi - 1.0, inv.eta - 1.0}) chk.see(v);
    }
    return {5, "complex4-canonical-invariants", false, chk.worst, 1e-8,
            "(xi,chi,eta,Gamma,Delta)=(0,0,0,0,-1), closed-form C_IJ/C_IK"};
}

struct ClassSample {
    std::string name;
    Frame frame;
};

std::vector<ClassSample> class_samples(const HQSpace& space, Rng& rng) {
    std::vector<ClassSample> out;
    {
        Quaternion im{0.0, rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                      rng.uniform(-0.5, 0.5)};
        out.push_back({"two_plane", lab::make_two_plane(space, im, 0)});
    }
    out.push_back({"complex4", lab::make_complex4(space, lab::random_structure(rng),
                                                  rng.uniform(0.15, 1.40), 0)});
    {
        std::vector<double> multi{rng.uniform(0.15, 0.7), rng.uniform(0.8, 1.4)};
        out.push_back({"complex_even",
                       lab::make_complex_even(space, lab::random_structure(rng), multi, 4, 0)});
    }
    {
        StructureCoeffs I1 = lab::random_structure(rng);
        StructureCoeffs I2 = lab::random_structure(rng);
        while (dist_up_to_sign(I1, I2) < 0.3) I2 = lab::random_structure(rng);
        std::vector<lab::SigmaSpecItem> items{{I1, {rng.uniform(0.15, 1.4)}, 2},
                                              {I2, {rng.uniform(0.15, 1.4)}, 2}};
        out.push_back({"sigma_complex", lab::make_sigma(space, items, 0)});
    }
    out.push_back({"quaternionic", lab::make_quaternionic(space, 8, 0)});
    out.push_back({"rhps", lab::make_rhps(space, 3, 0)});
    return out;
}

CriterionResult c6_spn_invariance(const HQSpace& space, Rng rng) {
    Check chk;
    const AdmissibleBasis basis;
    std::string detail;
    auto samples = class_samples(space, rng);
    for (const auto& sample : samples) {
        const OrbitInvariant ref = orbit_invariant(space, basis, sample.frame);
        Rng sub = rng.split(std::hash<std::string>{}(sample.name));
        for (int t = 0; t < 200; ++t) {
            const Eigen::MatrixXd g = lab::random_sp_n(space, sub.next_u64());
            const Frame gU = Frame::orthonormalize(g * sample.frame.basis(), 1e-10);
            const OrbitInvariant moved = orbit_invariant(space, basis, gU);
            chk.see(invariant_distance(ref, moved));
            if (!same_orbit(space, basis, sample.frame, gU)) {
                chk.see(1.0);
                detail = "same_orbit false for class " + sample.name;
            }
        }
    }
    if (detail.empty()) detail = "orbit_invariant(gU) = orbit_invariant(U), 6 classes x 200 g";
    return {6, "spn-invariance", false, chk.worst, 1e-6, detail};
}

CriterionResult c7_orbit_separation(const HQSpace& space, Rng rng) {
    Check chk;
    const AdmissibleBasis basis;
    int false_positives = 0;
    for (int t = 0; t < 500; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = rng.uniform(0.1, 1.45);
        const Frame U = lab::make_complex4(space, I, theta, 0);
        Frame W(space.dim());
        if (t % 2 == 0) {
            double theta2 = theta + (t % 4 == 0 ? 1.0 : -1.0) * rng.uniform(1e-3, 0.1);
            theta2 = std::min(1.45, std::max(0.1, theta2));
            if (std::abs(theta2 - theta) < 1e-3) theta2 = theta + 1e-3;
            W = lab::make_complex4(space, I, theta2, 2);
        } else {
            StructureCoeffs I2 = lab::random_structure(rng);
            while (dist_up_to_sign(I, I2) < 1e-2) I2 = lab::random_structure(rng);
            W = lab::make_complex4(space, I2, theta, 2);
        }
        if (same_orbit(space, basis, U, W)) ++false_positives;
    }
    chk.see(static_cast<double>(false_positives));
    return {7, "orbit-separation", false, chk.worst, 0.5,
            "distinct (I, theta) pairs reported non-equivalent; false positives = " +
                std::to_string(false_positives)};
}

CriterionResult c8_witness_soundness(const HQSpace& space, Rng rng) {
    Check chk;
    const AdmissibleBasis basis;
    int fails = 0;
    for (int t = 0; t < 100; ++t) {
        Rng sample_rng = rng.split(t);
        auto samples = class_samples(space, sample_rng);
        const Frame& U = samples[t % samples.size()].frame;
        const Eigen::MatrixXd g = lab::random_sp_n(space, sample_rng.next_u64());
        const Frame W = Frame::orthonormalize(g * U.basis(), 1e-10);
        const auto wit = sp_n_witness(space, basis, U, W, 1e-7);
        if (!wit) {
            ++fails;
            chk.see(1.0);
            continue;
        }
        chk.see(wit->max_principal_angle / 1e-7 * 1e-9);  // scale to shared threshold
        chk.see(wit->orthogonality_residual);
        chk.see(wit->commutator_norms.maxCoeff());
    }
    return {8, "witness-soundness", false, chk.worst, 1e-9,
            "h U = W to 1e-7, orthogonality and commutators to 1e-9; failures = " +
                std::to_string(fails)};
}

CriterionResult c9_decomposition_roundtrip(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 100; ++t) {
        const int items_count = 2 + static_cast<int>(rng.next_u64() % 2);
        std::vector<lab::SigmaSpecItem> items;
        std::vector<StructureCoeffs> used;
        for (int i = 0; i < items_count; ++i) {
            StructureCoeffs I = lab::random_structure(rng).canonical_sign();
            bool ok = false;
            while (!ok) {
                ok = true;
                for (const auto& prev : used) {
                    if (dist_up_to_sign(I, prev) < 0.25) {
                        I = lab::random_structure(rng).canonical_sign();
                        ok = false;
                        break;
                    }
                }
            }
            used.push_back(I);
            const int half = (items_count == 2) ? 1 + static_cast<int>(rng.next_u64() % 2) : 1;
            std::vector<double> multi;
            for (int a = 0; a < (half + 1) / 2; ++a) multi.push_back(rng.uniform(0.1, 1.45));
            std::sort(multi.begin(), multi.end());
            if (half % 2 != 0) multi.back() = kPi / 2.0;
            items.push_back({I, multi, half});
        }
        const Frame U0 = lab::make_sigma(space, items, 0);
        const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
        const Frame U = Frame::orthonormalize(g * U0.basis(), 1e-10);
        const Decomposition d = full_decompose(space, U);
        if (d.U_Q.dim() != 0 || d.U_R.dim() != 0 ||
            d.sigma.size() != items.size()) {
            chk.see(1.0);
            continue;
        }
        // match recovered addends to planted items (structures are distinct)
        std::vector<bool> taken(items.size(), false);
        for (const auto& addend : d.sigma) {
            int best = -1;
            double best_d = 1e9;
            for (size_t i = 0; i < items.size(); ++i) {
                if (taken[i]) continue;
                const double dd = dist_up_to_sign(addend.I, items[i].I);
                if (dd < best_d) {
                    best_d = dd;
                    best = static_cast<int>(i);
                }
            }
            taken[best] = true;
            chk.see(best_d);
            const auto multi = kaehler_multiangle(space, addend.I, addend.U);
            if (multi.size() != items[best].multiangle.size()) {
                chk.see(1.0);
                continue;
            }
            for (size_t a = 0; a < multi.size(); ++a) {
                chk.see(multi[a] - items[best].multiangle[a]);
            }
        }
    }
    return {9, "sigma-decomposition-roundtrip", false, chk.worst, 1e-6,
            "structure multiset and multiangles recovered after scrambling"};
}

CriterionResult c10_multiplicity_law(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 100; ++t) {
        const int m = 2 + static_cast<int>(rng.next_u64() % 3);  // half-dim 2..4
        const StructureCoeffs I = lab::random_structure(rng);
        std::vector<double> multi;
        const int entries = (m + 1) / 2;
        double base = rng.uniform(0.1, 1.2);
        for (int i = 0; i < entries; ++i) {
            // exact duplicates or well-separated values
            if (i > 0 && rng.next_double() < 0.4) {
                multi.push_back(multi.back());
            } else if (rng.next_double() < 0.25) {
                multi.push_back(kPi / 2.0);
            } else {
                multi.push_back(std::min(1.45, base + 0.2 * i));
            }
        }
        std::sort(multi.begin(), multi.end());
        if (m % 2 != 0) multi.back() = kPi / 2.0;
        const Frame U = lab::make_complex_even(space, I, multi, m, 0);
        const AdmissibleBasis adapted = adapted_basis(I);
        const Frame KU = Frame::orthonormalize(space.apply(adapted.K(), U.basis()), 1e-10);
        const PrincipalAngles pa = principal_angles(U, KU);
        // cluster cosines (descending) with the 1e-7 gap
        int i = 0;
        const int k = pa.count();
        while (i < k) {
            int j = i + 1;
            while (j < k && pa.cosines[i] - pa.cosines[j] < kClusterGap) ++j;
            const int size = j - i;
            const bool orthogonal = pa.cosines[i] <= kClusterGap;
            if (orthogonal) {
                chk.see(size % 2 == 0 ? 0.0 : 1.0);
            } else {
                chk.see(size % 4 == 0 ? 0.0 : 1.0);
            }
            i = j;
        }
    }
    return {10, "principal-angle-multiplicity-law", false, chk.worst, 0.5,
            "clusters of (U,KU): 4k below pi/2, 2k at pi/2"};
}

CriterionResult c11_characteristic_deviation(const HQSpace& space, Rng rng) {
    Check chk;
    // basis independence
    for (int t = 0; t < 10; ++t) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
        const Frame U = lab::random_subspace(space, dim, rng);
        const double ref = characteristic_deviation(space, U);
        for (int b = 0; b < 5; ++b) {
            const Eigen::MatrixXd O = random_rotation(dim, rng);
            const Frame V = Frame::from_orthonormal(U.basis() * O);
            chk.see(characteristic_deviation(space, V) - ref);
        }
        for (int b = 0; b < 5; ++b) {
            const AdmissibleBasis basis = lab::random_admissible_basis(rng);
            chk.see(characteristic_deviation(space, basis, U) - ref);
        }
    }
    // 4-dimensional complex value (2 cos^2 theta + 1) / 3
    for (int t = 0; t < 25; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = rng.uniform(0.0, kPi / 2.0);
        const Frame U = lab::make_complex4(space, I, theta, 0);
        const double expected = (2.0 * std::cos(theta) * std::cos(theta) + 1.0) / 3.0;
        chk.see(characteristic_deviation(space, U) - expected);
    }
    // Sp(n) . Sp(1) invariance
    double worst_sp = 0.0;
    for (int t = 0; t < 25; ++t) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 4);
        const Frame U = lab::random_subspace(space, dim, rng);
        const double ref = characteristic_deviation(space, U);
        const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
        const Quaternion q = lab::random_sp1(rng.next_u64());
        Frame moved = Frame::orthonormalize(g * U.basis(), 1e-10);
        moved = lab::act_sp1(space, moved, q);
        worst_sp = std::max(worst_sp, std::abs(characteristic_deviation(space, moved) - ref));
    }
    chk.see(worst_sp * 1e-9 / 1e-8);  // Sp(n).Sp(1) tolerance is 1e-8
    return {11, "characteristic-deviation", false, chk.worst, 1e-9,
            "basis independence, (2cos^2+1)/3 law, Sp(n).Sp(1) invariance"};
}

CriterionResult c12_associated_planes(const HQSpace& space, Rng rng) {
    Check chk;
    for (int t = 0; t < 100; ++t) {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = rng.uniform(0.05, kPi / 2.0 - 0.05);
        const Frame U = lab::make_complex4(space, I, theta, 0);
        const AdmissibleBasis adapted = adapted_basis(I);
        const double psi = rng.uniform(0.0, 2.0 * kPi);
        const StructureCoeffs K = StructureCoeffs::from_vec(
            std::cos(psi) * adapted.J().vec() + std::sin(psi) * adapted.K().vec());
        // random unit X in U
        Eigen::VectorXd xc(4);
        for (int i = 0; i < 4; ++i) xc[i] = rng.gaussian();
        const Eigen::VectorXd X = (U.basis() * xc.normalized()).eval();
        const Frame Up = associated_plane(space, I, U, X, K);
        const Eigen::VectorXd Xn = Up.col(0), Z = Up.col(1);

        // 1. Pr^{KU} U' = K U'
        const Eigen::MatrixXd KUb = space.apply(K, U.basis());
        const Eigen::MatrixXd proj = KUb * (KUb.transpose() * Up.basis());
        const Frame projF = Frame::orthonormalize(proj, 1e-10);
        const Frame KUp = Frame::orthonormalize(space.apply(K, Up.basis()), 1e-10);
        chk.see(subspace_gap(projF, KUp));
        // 2. U = U' perp IU'
        const Frame IUp = Frame::orthonormalize(space.apply(I, Up.basis()), 1e-10);
        chk.see((Up.basis().transpose() * IUp.basis()).cwiseAbs().maxCoeff());
        chk.see(subspace_gap(subspace_sum(Up, IUp), U));
        // 3. U' is an omega^K standard 2-plane: block-diagonal against complement
        const Frame comp = complement_in(U, Up);
        chk.see((Up.basis().transpose() * space.apply(K, comp.basis())).cwiseAbs().maxCoeff());
        // 4. K-Kaehler angle of U' equals theta
        chk.see(std::abs(std::cos(kaehler_angle(space, K, Xn, Z))) - std::cos(theta));
        // 5. IM(U') in i-perp with norm cos(theta)
        const Quaternion im = imaginary_measure(space, Xn, Z);
        const Eigen::Vector3d imv{im.x, im.y, im.z};
        chk.see(imv.dot(I.vec()));
        chk.see(imv.norm() - std::cos(theta));
        // 6. (X, Z) is I-orthogonal
        chk.see(Z.dot(X.normalized()));
        chk.see(Z.dot(space.apply(I, X).normalized()));
    }
    CriterionResult res{12, "associated-planes", false, chk.worst, 1e-8,
                        "six equivalent characterizations + rebuilt-angle example"};

    // worked example: I' = (1/3)I + (2/3)J + (2/3)K rebuilt from an associated
    // plane w.r.t. K' = (-J + K)/sqrt(2); the rebuilt angle matches to 1e-10.
    Check ex;
    const double s2 = 1.0 / std::sqrt(2.0);
    for (double theta : {0.3, 0.7, 1.1}) {
        const Frame U = lab::make_complex4(space, StructureCoeffs::I(), theta, 0);
        const StructureCoeffs Kp{0.0, -s2, s2};
        const Frame Up = associated_plane(space, StructureCoeffs::I(), U, U.col(0), Kp);
        const StructureCoeffs Ip{1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
        const Frame IpUp = Frame::orthonormalize(space.apply(Ip, Up.basis()), 1e-10);
        const Frame rebuilt = subspace_sum(Up, IpUp);
        ex.see(std::cos(i_perp_kaehler_angle(space, Ip, rebuilt)) - std::cos(theta));
    }
    if (ex.worst > 1e-10) {
        res.worst = std::max(res.worst, 1.0);
        res.detail += "; worked example residual " + std::to_string(ex.worst);
    }
    return res;
}

}  // namespace

std::vector<CriterionResult> run_selftest(const SelfTestOptions& opt) {
    const HQSpace space(opt.n);
    Rng root(opt.seed);
    std::vector<CriterionResult> results;
    results.push_back(c1_structure_algebra(space, root.split(1)));
    results.push_back(c2_hermitian_consistency(space, root.split(2)));
    results.push_back(c3_principal_angles(space, root.split(3)));
    results.push_back(c4_isoclinic_formulas(space, root.split(4)));
    results.push_back(c5_complex4_invariants(space, root.split(5)));
    results.push_back(c6_spn_invariance(space, root.split(6)));
    results.push_back(c7_orbit_separation(space, root.split(7)));
    results.push_back(c8_witness_soundness(space, root.split(8)));
    results.push_back(c9_decomposition_roundtrip(space, root.split(9)));
    results.push_back(c10_multiplicity_law(space, root.split(10)));
    results.push_back(c11_characteristic_deviation(space, root.split(11)));
    results.push_back(c12_associated_planes(space, root.split(12)));
    for (auto& r : results) {
        if (opt.tol_inject > 0.0) r.threshold = opt.tol_inject;
        r.pass = r.worst <= r.threshold;
    }
    return results;
}

bool report_selftest(const std::vector<CriterionResult>& results, std::ostream& os) {
    bool all = true;
    for (const auto& r : results) {
        std::ostringstream line;
        line << (r.pass ? "PASS" : "FAIL") << " criterion-" << std::setw(2)
             << std::setfill('0') << r.index << " " << r.name << "  worst="
             << std::scientific << std::setprecision(3) << r.worst
             << " tol=" << r.threshold << "  (" << r.detail << ")";
        os << line.str() << "\n";
        all = all && r.pass;
    }
    return all;
}

}  // namespace hqgrass
