#pragma once

#include <cstdint>
#include <vector>

#include "hqgrass/angles.hpp"
#include "hqgrass/frame.hpp"
#include "hqgrass/space.hpp"

namespace hqgrass::lab {

// Counter-based splittable generator (splitmix64). All randomness in the
// test/lab layer flows from one 64-bit seed; split() derives independent
// streams so parallel sweeps stay reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_double();              // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();                 // Box-Muller, deterministic
    Rng split(std::uint64_t stream) const;

private:
    std::uint64_t state_;
};

Eigen::VectorXd random_unit_vector(const HQSpace& space, Rng& rng);
Frame random_subspace(const HQSpace& space, int dim, Rng& rng);
hqgrass::StructureCoeffs random_structure(Rng& rng);
AdmissibleBasis random_admissible_basis(Rng& rng);

// U = span(X, IX, Z, IZ) with X = e_a, Z = cos(theta)(-K e_a) + sin(theta) e_b
// on the quaternionic coordinate pair (slot, slot+1); its I-perp Kaehler
// angle is exactly theta.
Frame make_complex4(const HQSpace& space, const StructureCoeffs& I, double theta, int slot);

// Pure I-complex subspace of dimension 2*half_dim with the given multiangle
// (ceil(half_dim/2) entries, ascending; the last must be pi/2 when half_dim
// is odd, realized as a trailing totally complex 2-plane). Slots are consumed
// from first_slot upward, two per 4-dimensional addend.
Frame make_complex_even(const HQSpace& space, const StructureCoeffs& I,
                        const std::vector<double>& multiangle, int half_dim, int first_slot);

struct SigmaSpecItem {
    StructureCoeffs I;
    std::vector<double> multiangle;
    int half_dim = 0;  // addend dimension = 2 * half_dim
};

Frame make_sigma(const HQSpace& space, const std::vector<SigmaSpecItem>& items,
                 int first_slot);

Frame make_quaternionic(const HQSpace& space, int dim, int first_slot);
Frame make_rhps(const HQSpace& space, int dim, int first_slot);
// 2-plane with prescribed imaginary measure (|im| <= 1)
Frame make_two_plane(const HQSpace& space, const Quaternion& im, int first_slot);

// Random quaternionic unitary realized as a real 4n x 4n matrix: orthogonal
// and commuting with I, J, K.
Eigen::MatrixXd random_sp_n(const HQSpace& space, std::uint64_t seed);

Quaternion random_sp1(std::uint64_t seed);
// right-multiplies every frame column by the unit quaternion q
Frame act_sp1(const HQSpace& space, const Frame& U, const Quaternion& q);

// Independent principal-angle route through the eigenvalues of M M^T,
// M = Bu^T Bw; used to cross-validate the SVD path.
PrincipalAngles oracle_principal_angles(const Frame& U, const Frame& W);

// Gram-determinant route for the angle between subspaces, dim U <= dim W:
// sqrt(det of the Gram matrix of the projections of U's basis onto W).
double oracle_subspace_angle(const Frame& U, const Frame& W);

}  // namespace hqgrass::lab
