#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hqgrass/decompose.hpp"

namespace hqgrass {

inline constexpr double kDefaultCompareTol = 1e-6;

// Im(L . M) / mis(L ^ M); pure imaginary. For the non-oriented plane the
// invariant is the pair {+value, -value}.
Quaternion imaginary_measure(const HQSpace& space, const Eigen::VectorXd& X,
                             const Eigen::VectorXd& Y);

// Mean of the squared imaginary-measure norms over all coordinate 2-planes of
// an orthonormal basis; in [0,1], basis- and admissible-basis-independent.
double characteristic_deviation(const HQSpace& space, const Frame& U);
// same quantity evaluated through a rotated admissible basis
double characteristic_deviation(const HQSpace& space, const AdmissibleBasis& basis,
                                const Frame& U);

enum class SubspaceClass {
    TwoPlane,
    Quaternionic,
    Ic4,
    PureComplex,
    SigmaComplex,
    TotallyReal,
    Other,
};

std::string to_string(SubspaceClass c);

struct Classification {
    SubspaceClass cls = SubspaceClass::Other;
    bool rhps = false;  // all pairwise Hermitian products real
    Decomposition decomposition;
};

Classification classify(const HQSpace& space, const Frame& U, double tol = kSnapTol);

// The six standard bases sharing the leading vector X1: the omega^I chains
// X and Xt, the omega^J chains Y and Yt, the omega^K chains Z and Zt, with
// X3 = Y3, Xt3 = Z3, Yt3 = Zt3.
struct Chains {
    std::array<Eigen::VectorXd, 4> X, Y, Xt, Z, Yt, Zt;
    bool degenerate = false;  // 2-planes-decomposable / orthogonal branch
};

Chains build_chains(const HQSpace& space, const AdmissibleBasis& basis, const Frame& U,
                    const Eigen::VectorXd& X1, double tol = kSnapTol);

struct Ic4Invariants {
    double theta_I = 0.0, theta_J = 0.0, theta_K = 0.0;
    double xi = 0.0, chi = 0.0, eta = 0.0;
    double Gamma = 0.0, Delta = 0.0;
    Eigen::Matrix4d C_IJ = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d C_IK = Eigen::Matrix4d::Identity();
};

// Closed forms of the canonical matrices from (xi, chi, Gamma, Delta).
Eigen::Matrix4d canonical_C_IJ(double xi);
Eigen::Matrix4d canonical_C_IK(double chi, double Gamma, double Delta);

Ic4Invariants ic4_invariants(const HQSpace& space, const AdmissibleBasis& basis,
                             const Frame& U, double tol = kSnapTol);

// The common principal angle of (U, KU), K in I-perp, for a 4-dimensional
// pure I-complex U.
double i_perp_kaehler_angle(const HQSpace& space, const StructureCoeffs& I, const Frame& U,
                            double tol = kSnapTol);

// L(X, Z) with Z = K^{-1} Pr^{KU} X / cos theta.
Frame associated_plane(const HQSpace& space, const StructureCoeffs& I, const Frame& U,
                       const Eigen::VectorXd& X, const StructureCoeffs& K,
                       double tol = kSnapTol);

struct TwoPlaneInvariant {
    Quaternion im;  // compared up to sign
};
struct Ic4Invariant {
    Ic4Invariants inv;
};
struct QuaternionicInvariant {
    int dim = 0;
};
struct ComplexInvariant {
    StructureCoeffs I;  // canonical sign
    std::vector<double> multiangle;
};
struct SigmaComplexInvariant {
    std::vector<ComplexInvariant> items;  // lexicographic structure order
};
struct RhpsInvariant {
    int dim = 0;
};

struct OrbitInvariant {
    std::variant<TwoPlaneInvariant, Ic4Invariant, QuaternionicInvariant, ComplexInvariant,
                 SigmaComplexInvariant, RhpsInvariant>
        data;

    SubspaceClass cls() const;
};

OrbitInvariant orbit_invariant(const HQSpace& space, const AdmissibleBasis& basis,
                               const Frame& U, double tol = kSnapTol);

bool same_orbit(const HQSpace& space, const AdmissibleBasis& basis, const Frame& U,
                const Frame& W, double tol = kDefaultCompareTol,
                double class_tol = kSnapTol);
// max deviation between two comparable invariants (infinity when shapes differ)
double invariant_distance(const OrbitInvariant& a, const OrbitInvariant& b);

struct SpnWitness {
    Eigen::MatrixXd g;  // 4n x 4n, orthogonal, commutes with I, J, K
    double max_principal_angle = 0.0;
    Eigen::Vector3d commutator_norms = Eigen::Vector3d::Zero();
    double orthogonality_residual = 0.0;
};

// Explicit element with g U = W, built by matching canonical bases and
// extending to Hermitian-orthonormal bases of H^n. Requires same_orbit.
// Returns nullopt only when the numerical verification fails.
std::optional<SpnWitness> sp_n_witness(const HQSpace& space, const AdmissibleBasis& basis,
                                       const Frame& U, const Frame& W,
                                       double tol = 1e-7);

}  // namespace hqgrass
