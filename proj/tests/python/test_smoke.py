"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import hqgrass


def make_complex4(theta, structure=(0.6, 0.8, 0.0), n=8):
    return hqgrass.generate(
        {"class": "complex4", "structure": list(structure), "theta": theta}, n=n
    )


def test_apply_structure_roundtrip():
    x = np.zeros(8)
    x[0] = 1.0
    ix = hqgrass.apply_structure((1.0, 0.0, 0.0), x)
    assert ix[1] == -1.0
    # A^2 = -Id
    back = hqgrass.apply_structure((1.0, 0.0, 0.0), ix)
    assert np.allclose(back, -x)


def test_hermitian_product():
    rng = np.random.default_rng(0)
    l = rng.standard_normal(32)
    l /= np.linalg.norm(l)
    w, x, y, z = hqgrass.hermitian_product(l, l)
    assert abs(w - 1.0) < 1e-12
    assert abs(x) + abs(y) + abs(z) < 1e-12


def test_principal_angles_match_numpy():
    rng = np.random.default_rng(1)
    u, _ = np.linalg.qr(rng.standard_normal((32, 3)))
    w, _ = np.linalg.qr(rng.standard_normal((32, 5)))
    got = hqgrass.principal_angles(u, w)
    sv = np.linalg.svd(u.T @ w, compute_uv=False)
    expect = np.arccos(np.clip(np.sort(sv)[::-1], 0, 1))
    assert np.allclose(np.sort(got), np.sort(expect), atol=1e-9)


def test_classify_and_invariant():
    u = make_complex4(0.7)
    assert hqgrass.classify(u) == "complex"
    inv = hqgrass.orbit_invariant(u)
    assert inv["class"] == "complex"
    assert abs(inv["data"]["multiangle"][0] - 0.7) < 1e-8


def test_same_orbit_and_witness():
    u = make_complex4(0.9)
    g = hqgrass.random_sp_n(8, seed=5)
    w = g @ u
    assert hqgrass.same_orbit(u, w)
    wit = hqgrass.witness(u, w)
    assert wit is not None
    assert wit["max_principal_angle"] <= 1e-7
    mapped = wit["g"] @ u
    sv = np.linalg.svd(mapped.T @ w / (np.linalg.norm(mapped, axis=0)), compute_uv=False)
    assert sv.min() > 1 - 1e-6

    other = make_complex4(1.2)
    assert not hqgrass.same_orbit(u, other)


def test_decompose_report():
    spec = {
        "class": "sigma",
        "items": [
            {"structure": [1, 0, 0], "multiangle": [0.5], "dim": 4},
            {"structure": [0, 1, 0], "multiangle": [1.0], "dim": 4},
        ],
    }
    u = hqgrass.generate(spec, n=8)
    rep = hqgrass.decompose(u)
    assert rep["U_Q_dim"] == 0
    assert rep["U_R_dim"] == 0
    assert len(rep["sigma"]) == 2
    angles = sorted(item["multiangle"][0] for item in rep["sigma"])
    assert abs(angles[0] - 0.5) < 1e-6
    assert abs(angles[1] - 1.0) < 1e-6


def test_bad_input_raises():
    with pytest.raises(ValueError):
        hqgrass.apply_structure((1.0, 0.0, 0.0), np.zeros(5))
    with pytest.raises(ValueError):
        hqgrass.generate({"class": "swizzle"}, n=8)
