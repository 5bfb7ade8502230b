#include "hqgrass/decompose.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hqgrass/health.hpp"

namespace hqgrass {

namespace {

struct FormTriple {
    Eigen::MatrixXd I, J, K;

    Eigen::MatrixXd at(const Eigen::Vector3d& v) const {
        return v[0] * I + v[1] * J + v[2] * K;
    }
};

FormTriple restricted_forms(const HQSpace& space, const Frame& W) {
    FormTriple t;
    t.I = W.basis().transpose() * space.apply_I(W.basis());
    t.J = W.basis().transpose() * space.apply_J(W.basis());
    t.K = W.basis().transpose() * space.apply_K(W.basis());
    return t;
}

double sigma_max_exact(const Eigen::MatrixXd& omega) {
    const Eigen::MatrixXd S = -omega * omega;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

// Cheap scoring for the grid sweep: a few power iterations on S = -omega^2.
double sigma_max_approx(const Eigen::MatrixXd& omega) {
    const int m = static_cast<int>(omega.rows());
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x[i] = 1.0 + 0.37 * ((i * 2654435761u) % 97) / 97.0;
    x.normalize();
    for (int it = 0; it < 12; ++it) {
        x = -(omega * (omega * x));
        const double nrm = x.norm();
        if (nrm == 0.0) return 0.0;
        x /= nrm;
    }
    return std::sqrt(std::max(0.0, x.dot(-(omega * (omega * x)))));
}

Eigen::Vector3d sphere_point(double incl, double azim) {
    return {std::sin(incl) * std::cos(azim), std::sin(incl) * std::sin(azim),
            std::cos(incl)};
}

// Compass search on the sphere in local tangent coordinates; exact sigma.
Eigen::Vector3d refine_on_sphere(const FormTriple& forms, Eigen::Vector3d v, double step0) {
    double best = sigma_max_exact(forms.at(v));
    double step = step0;
    while (step > 1e-9) {
        // tangent frame at v
        Eigen::Vector3d t1 = v.cross(std::abs(v[0]) < 0.9 ? Eigen::Vector3d::UnitX()
                                                          : Eigen::Vector3d::UnitY());
        t1.normalize();
        const Eigen::Vector3d t2 = v.cross(t1);
        bool moved = false;
        for (const Eigen::Vector3d& d :
             {Eigen::Vector3d(t1), Eigen::Vector3d(-t1), Eigen::Vector3d(t2),
              Eigen::Vector3d(-t2)}) {
            const Eigen::Vector3d cand = (v + step * d).normalized();
            const double s = sigma_max_exact(forms.at(cand));
            if (s > best + 1e-15) {
                best = s;
                v = cand;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    return v;
}

// Polish a near-complex structure against the invariant subspace it
// determines: minimize |(Id - P) A(v) B|_F^2 over unit v, a 3x3 eigenproblem.
Eigen::Vector3d polish_structure(const HQSpace& space, const Frame& W,
                                 Eigen::Vector3d v, double tol) {
    for (int round = 0; round < 3; ++round) {
        const Frame inv = max_invariant_subspace(
            space, StructureCoeffs::from_vec(v), W, std::max(tol, 1e-6));
        if (inv.dim() == 0) return v;
        const Eigen::MatrixXd B = inv.basis();
        std::array<Eigen::MatrixXd, 3> AB = {space.apply_I(B), space.apply_J(B),
                                             space.apply_K(B)};
        for (auto& M : AB) M -= B * (B.transpose() * M);
        Eigen::Matrix3d Q;
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                Q(i, j) = Q(j, i) = (AB[i].array() * AB[j].array()).sum();
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(Q);
        Eigen::Vector3d next = eig.eigenvectors().col(0);
        if (next.dot(v) < 0) next = -next;
        v = next;
    }
    return v;
}

}  // namespace

Frame maximal_quaternionic(const HQSpace& space, const Frame& U, double tol) {
    Frame W = U;
    while (W.dim() > 0) {
        const int before = W.dim();
        W = max_invariant_subspace(space, StructureCoeffs::I(), W, tol);
        W = max_invariant_subspace(space, StructureCoeffs::J(), W, tol);
        W = max_invariant_subspace(space, StructureCoeffs::K(), W, tol);
        if (W.dim() == before) break;
    }
    if (W.dim() % 4 != 0) {
        health::warn("maximal_quaternionic: dimension not divisible by 4");
    }
    return W;
}

std::optional<StructureCoeffs> find_complex_structure(const HQSpace& space, const Frame& W,
                                                      double tol,
                                                      const SphereSearchOptions& opt) {
    if (W.dim() < 2) return std::nullopt;
    const FormTriple forms = restricted_forms(space, W);

    // coarse sweep; keep a few well-separated basin seeds
    struct Seed {
        double score;
        Eigen::Vector3d v;
    };
    std::vector<Seed> seeds;
    for (int i = 0; i < opt.grid_inclination; ++i) {
        const double incl = M_PI * (i + 0.5) / opt.grid_inclination;
        for (int j = 0; j < opt.grid_azimuth; ++j) {
            const double azim = 2.0 * M_PI * j / opt.grid_azimuth;
            const Eigen::Vector3d v = sphere_point(incl, azim);
            const double s = sigma_max_approx(forms.at(v));
            bool placed = false;
            for (auto& seed : seeds) {
                if (std::min((seed.v - v).norm(), (seed.v + v).norm()) < 0.3) {
                    if (s > seed.score) {
                        seed.score = s;
                        seed.v = v;
                    }
                    placed = true;
                    break;
                }
            }
            if (!placed) seeds.push_back({s, v});
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Seed& a, const Seed& b) { return a.score > b.score; });
    if (seeds.size() > 3) seeds.resize(3);

    const double grid_step = M_PI / opt.grid_inclination;
    Eigen::Vector3d best_v = seeds.front().v;
    double best = -1.0;
    for (const auto& seed : seeds) {
        const Eigen::Vector3d v = refine_on_sphere(forms, seed.v, 2.0 * grid_step);
        const double s = sigma_max_exact(forms.at(v));
        if (s > best) {
            best = s;
            best_v = v;
        }
    }
    if (best < 1.0 - tol) return std::nullopt;

    const Eigen::Vector3d polished = polish_structure(space, W, best_v, tol);
    if (sigma_max_exact(forms.at(polished)) >= 1.0 - tol) {
        best_v = polished;
    } else {
        health::warn("find_complex_structure: polish step rejected");
    }
    return StructureCoeffs::from_vec(best_v).canonical_sign();
}

Decomposition full_decompose(const HQSpace& space, const Frame& U, double tol,
                             const SphereSearchOptions& opt) {
    Decomposition d;
    d.U_Q = maximal_quaternionic(space, U, tol);
    Frame W = complement_in(U, d.U_Q);
    while (W.dim() >= 2) {
        const auto A = find_complex_structure(space, W, tol, opt);
        if (!A) break;
        const Frame Ui = max_invariant_subspace(space, *A, W, tol);
        if (Ui.dim() == 0) {
            health::warn("full_decompose: structure found but invariant subspace empty");
            break;
        }
        d.sigma.push_back({A->canonical_sign(), Ui});
        W = complement_in(W, Ui);
    }
    d.U_R = W;
    std::sort(d.sigma.begin(), d.sigma.end(),
              [](const ComplexAddend& a, const ComplexAddend& b) {
                  return a.I.lex_less(b.I);
              });
    return d;
}

std::vector<std::pair<double, Frame>> decompose_complex(const HQSpace& space,
                                                        const StructureCoeffs& I,
                                                        const Frame& U, double tol) {
    const int m2 = U.dim();
    if (m2 == 0 || m2 % 2 != 0) {
        throw std::invalid_argument("decompose_complex: dimension must be even and nonzero");
    }
    {
        const Eigen::MatrixXd M = U.basis().transpose() * space.apply(I, U.basis());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        if (svd.singularValues().minCoeff() < 1.0 - std::max(tol, 1e-7)) {
            throw std::invalid_argument("decompose_complex: input is not I-complex");
        }
    }
    if (maximal_quaternionic(space, U, tol).dim() != 0) {
        throw std::invalid_argument("decompose_complex: input is not pure");
    }

    const AdmissibleBasis adapted = adapted_basis(I);
    const StructureCoeffs K = adapted.K();
    const Eigen::MatrixXd KU = space.apply(K, U.basis());  // orthonormal frame of KU

    std::vector<std::pair<double, Frame>> out;
    for (const auto& [sigma, cluster] : invariant_subspaces(space, K, U)) {
        if (sigma >= 1.0 - std::max(tol, 1e-7)) {
            throw std::invalid_argument("decompose_complex: input is not pure");
        }
        if (sigma <= kSnapTol) {
            // totally complex residual: split along the omega^I standard form
            const StandardBasis sb = standard_basis(restrict_form(space, I, cluster));
            if (sb.zero_dim != 0) {
                health::warn("decompose_complex: totally complex residual not I-complex");
            }
            const int nplanes = static_cast<int>(sb.sigmas.size());
            int p = 0;
            for (; p + 1 < nplanes; p += 2) {
                out.emplace_back(M_PI / 2.0, Frame::from_orthonormal(
                                                 sb.frame.basis().middleCols(2 * p, 4)));
            }
            if (p < nplanes) {
                out.emplace_back(M_PI / 2.0,
                                 Frame::from_orthonormal(sb.frame.basis().rightCols(2)));
            }
            continue;
        }
        const double theta = clamped_arccos(sigma);
        if (cluster.dim() % 4 != 0) {
            health::warn("decompose_complex: sigma-cluster dimension not divisible by 4");
        }
        Frame V = cluster;
        while (V.dim() >= 4) {
            const Eigen::VectorXd X = V.col(0);
            const Eigen::VectorXd p = KU * (KU.transpose() * X);
            Eigen::VectorXd Z = -space.apply(K, p);
            const double nrm = Z.norm();
            if (nrm < tol) {
                health::warn("decompose_complex: vanishing projection inside sigma-cluster");
                break;
            }
            Z /= nrm;
            Eigen::MatrixXd cols(U.ambient_dim(), 4);
            cols.col(0) = X;
            cols.col(1) = Z;
            cols.col(2) = space.apply(I, X);
            cols.col(3) = space.apply(I, Z);
            const Frame addend = Frame::orthonormalize(cols, tol);
            if (addend.dim() != 4) {
                health::warn("decompose_complex: degenerate 4-dimensional addend");
                break;
            }
            out.emplace_back(theta, addend);
            const Frame next = complement_in(V, addend, tol);
            if (next.dim() != V.dim() - 4) {
                health::warn("decompose_complex: cluster dimension did not drop by 4");
            }
            V = next;
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<double> kaehler_multiangle(const HQSpace& space, const StructureCoeffs& I,
                                       const Frame& U, double tol) {
    std::vector<double> thetas;
    for (const auto& [theta, addend] : decompose_complex(space, I, U, tol)) {
        thetas.push_back(theta);
    }
    std::sort(thetas.begin(), thetas.end());
    return thetas;
}

}  // namespace hqgrass
