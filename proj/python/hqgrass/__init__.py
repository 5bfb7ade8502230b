"""Sp(n)-orbit invariants of subspaces of a quaternionic Hermitian vector space.

Frames are numpy arrays of shape (4n, m) whose columns span the subspace;
they are orthonormalized on entry.
"""

from ._core import (
    __version__,
    apply_structure,
    classify,
    decompose,
    generate,
    hermitian_product,
    orbit_invariant,
    principal_angles,
    random_sp_n,
    same_orbit,
    selftest,
    witness,
)

__all__ = [
    "__version__",
    "apply_structure",
    "classify",
    "decompose",
    "generate",
    "hermitian_product",
    "orbit_invariant",
    "principal_angles",
    "random_sp_n",
    "same_orbit",
    "selftest",
    "witness",
]
