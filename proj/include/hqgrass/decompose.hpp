#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hqgrass/kaehler_form.hpp"

namespace hqgrass {

struct ComplexAddend {
    StructureCoeffs I;  // canonical sign
    Frame U;
};

// U = U_Q (quaternionic) + complex addends (pairwise Hermitian-orthogonal)
// + U_R (totally real), all mutually orthogonal.
struct Decomposition {
    Frame U_Q;
    std::vector<ComplexAddend> sigma;  // lexicographic order of (alpha,beta,gamma)
    Frame U_R;
};

// Largest W in U with IW = JW = KW = W; dimension divisible by 4.
Frame maximal_quaternionic(const HQSpace& space, const Frame& U, double tol = kSnapTol);

struct SphereSearchOptions {
    int grid_inclination = 64;
    int grid_azimuth = 128;
};

// A unit (alpha,beta,gamma) with sigma_max(alpha Omega_I + beta Omega_J +
// gamma Omega_K) >= 1 - tol, found by a coarse sphere grid plus local ascent,
// then polished against the invariant subspace it reveals. Returns nullopt if
// the refined maximum stays below 1 - tol (W is totally real). The result
// carries the canonical sign. W must contain no quaternionic subspace.
std::optional<StructureCoeffs> find_complex_structure(
    const HQSpace& space, const Frame& W, double tol = kSnapTol,
    const SphereSearchOptions& opt = {});

Decomposition full_decompose(const HQSpace& space, const Frame& U, double tol = kSnapTol,
                             const SphereSearchOptions& opt = {});

// Hermitian-orthogonal splitting of a pure I-complex subspace of dimension 2m
// into 4-dimensional pure I-complex addends, plus one trailing totally
// complex 2-plane iff m is odd. Returned as (theta, addend), theta ascending.
std::vector<std::pair<double, Frame>> decompose_complex(const HQSpace& space,
                                                        const StructureCoeffs& I,
                                                        const Frame& U,
                                                        double tol = kSnapTol);

// Sorted theta list of decompose_complex; ceil(m/2) entries for dim U = 2m,
// ending in pi/2 when m is odd. Independent of the (non-unique) splitting.
std::vector<double> kaehler_multiangle(const HQSpace& space, const StructureCoeffs& I,
                                       const Frame& U, double tol = kSnapTol);

}  // namespace hqgrass
