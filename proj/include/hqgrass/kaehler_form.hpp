#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hqgrass/angles.hpp"
#include "hqgrass/frame.hpp"
#include "hqgrass/space.hpp"

namespace hqgrass {

inline constexpr double kSnapTol = 1e-8;

// Restriction of the A-Kaehler skew form to U: Omega = B^T (A B).
struct SkewForm {
    Eigen::MatrixXd omega;  // m x m, skew-symmetric
    Frame base;
    StructureCoeffs A;
};

SkewForm restrict_form(const HQSpace& space, const StructureCoeffs& A, const Frame& U);

// Orthonormal basis of U in which Omega takes the block standard form:
// entry (i, i+1) = sigma_b >= 0 for odd i (1-based), zero elsewhere, with the
// sigmas non-increasing and a trailing zero block.
struct StandardBasis {
    Frame frame;                 // ambient 4n x m, columns in standard order
    Eigen::MatrixXd rotation;    // m x m orthogonal; frame = base * rotation
    std::vector<double> sigmas;  // one per 2-block, non-increasing
    int zero_dim = 0;            // trailing columns on which the form vanishes

    // the m x m matrix of the form in this basis (for verification)
    Eigen::MatrixXd standard_matrix() const;
};

StandardBasis standard_basis(const SkewForm& form);

// 2-blocks of the standard form grouped by clustered sigma (gap kClusterGap),
// largest sigma first; a vanishing-form cluster comes last with sigma = 0.
// The returned subspaces are mutually orthogonal and canonical.
std::vector<std::pair<double, Frame>> invariant_subspaces(const HQSpace& space,
                                                          const StructureCoeffs& A,
                                                          const Frame& U);

// The sigma ~ 1 cluster: the maximal subspace W of U with AW = W.
Frame max_invariant_subspace(const HQSpace& space, const StructureCoeffs& A, const Frame& U,
                             double tol = kSnapTol);

}  // namespace hqgrass
