#pragma once

#include <Eigen/Dense>

#include "hqgrass/frame.hpp"
#include "hqgrass/space.hpp"

namespace hqgrass {

inline constexpr double kDefaultIsoclinicTol = 1e-8;
inline constexpr double kClampHealthTol = 1e-7;
inline constexpr double kClusterGap = 1e-7;

// arccos of a cosine that may have drifted slightly outside [0,1]; a drift
// beyond kClampHealthTol raises a numerical-health warning.
double clamped_arccos(double c);

struct PrincipalAngles {
    Eigen::VectorXd thetas;   // ascending, in [0, pi/2]
    Eigen::VectorXd cosines;  // descending singular values, clamped to [0,1]
    Eigen::MatrixXd left;     // 4n x k related principal vectors, <u_i, v_i> >= 0
    Eigen::MatrixXd right;

    int count() const { return static_cast<int>(thetas.size()); }
};

PrincipalAngles principal_angles(const Frame& U, const Frame& W);

// Angle between subspaces through the product-of-cosines identity; [0, pi/2].
// Requires dim U <= dim W.
double subspace_angle(const Frame& U, const Frame& W);

// Oriented A-Kaehler angle of the plane L(X, Y), in [0, pi].
double kaehler_angle(const HQSpace& space, const StructureCoeffs& A,
                     const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

// cos theta_h = |L.M| / (|L||M|)
double hermitian_angle(const HQSpace& space, const Eigen::VectorXd& L,
                       const Eigen::VectorXd& M);
// angle of the pair of quaternionic lines (QL, QM); cos = cos^4 theta_h
double characteristic_angle(const HQSpace& space, const Eigen::VectorXd& L,
                            const Eigen::VectorXd& M);

struct IsoclinicReport {
    bool isoclinic = false;
    double angle = 0.0;      // meaningful when isoclinic
    double deviation = 0.0;  // max-norm distance of G G^T from sigma^2 Id
};

// G = B^T (A B); isoclinic iff G G^T is a multiple of the identity within tol.
IsoclinicReport isoclinicity(const HQSpace& space, const StructureCoeffs& A,
                             const Frame& U, double tol = kDefaultIsoclinicTol);

// Angle of isoclinicity of a 4-dimensional isoclinic subspace through
// cos^2 theta^A = -1/4 Tr[(Omega^A)^2].
double isoclinic_angle_trace(const HQSpace& space, const StructureCoeffs& A, const Frame& U);

}  // namespace hqgrass
