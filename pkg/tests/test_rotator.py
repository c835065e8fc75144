import numpy as np
import pytest

from ontolab import rotator


def test_angular_momentum_algebra():
    ops = rotator.build_operators(rotator.RotatorParams(3.0))
    L1 = 0.5 * (ops.Lplus + ops.Lminus)
    L2 = -0.5j * (ops.Lplus - ops.Lminus)
    assert np.max(np.abs(L1 @ L2 - L2 @ L1 - 1j * ops.L3)) < 1e-12
    casimir = L1 @ L1 + L2 @ L2 + ops.L3 @ ops.L3
    assert np.allclose(casimir, 3.0 * 4.0 * np.eye(7))


def test_xp_commutator_identity():
    # [x, p] = i (1 - (2 ell + 1) H / (2 pi ell)), exactly
    for ell in (0.5, 1.0, 2.5, 6.0):
        p = rotator.RotatorParams(ell)
        ops = rotator.build_operators(p)
        lhs = ops.x @ ops.p - ops.p @ ops.x
        rhs = 1j * (np.eye(p.N) - p.N * ops.hamiltonian / (2.0 * np.pi * ell))
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_sigma_spectrum_is_integer_ladder():
    p = rotator.RotatorParams(4.0)
    sig = rotator.sigma_operator(p)
    assert np.max(np.abs(sig - sig.conj().T)) < 1e-12
    vals = np.sort(np.linalg.eigvalsh(sig))
    assert np.allclose(vals, np.arange(-4, 5), atol=1e-10)


def test_sigma_exponential_raises_cyclically():
    # exp(2 pi i sigma / N) is a cyclic shift on the energy basis
    p = rotator.RotatorParams(3.0)
    N = p.N
    sig = rotator.sigma_operator(p)
    vals, vecs = np.linalg.eigh(2.0 * np.pi * sig / N)
    W = (vecs * np.exp(1j * vals)) @ vecs.conj().T
    for m in range(N):
        e = np.zeros(N)
        e[m] = 1.0
        image = W @ e
        assert abs(abs(image[(m + 1) % N]) - 1.0) < 1e-9


def test_x_frame_transform_diagonalises_x():
    for ell in (1.0, 3.5, 10.0):
        p = rotator.RotatorParams(ell)
        V = rotator.x_frame_transform(p)
        assert np.max(np.abs(V.conj().T @ V - np.eye(p.N))) < 1e-9
        ops = rotator.build_operators(p)
        L1 = np.sqrt(ell) * ops.x
        D = V.conj().T @ L1 @ V
        m1 = np.arange(p.N) - ell
        assert np.allclose(np.diagonal(D).real, m1, atol=1e-8)
        assert np.max(np.abs(D - np.diag(np.diagonal(D)))) < 1e-8


def test_x_frame_transform_survives_large_ell():
    # the naive factorial recursion overflows near ell ~ 85; the log-scaled
    # version must stay unitary well past that
    p = rotator.RotatorParams(120.0)
    V = rotator.x_frame_transform(p)
    assert np.all(np.isfinite(V))
    assert np.max(np.abs(V.conj().T @ V - np.eye(p.N))) < 1e-8


def test_deterministic_evolution():
    assert rotator.deterministic_evolution_check(rotator.RotatorParams(2.5), 1)
    assert rotator.deterministic_evolution_check(rotator.RotatorParams(3.0), 4)


def test_bad_ell_rejected():
    with pytest.raises(ValueError):
        rotator.RotatorParams(0.3)
