import numpy as np
import pytest
import scipy.linalg

from ontolab import hilbert
from ontolab.errors import NonUnitary


def haar_unitary(n, seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def test_eigenphases_roundtrip():
    U = haar_unitary(17, 0)
    spec = hilbert.eigenphases(U)
    assert np.all(spec.phases >= 0.0)
    assert np.all(spec.phases < 2.0 * np.pi)
    assert np.max(np.abs(spec.reconstruct() - U)) < 1e-12


def test_eigenphases_sorted_and_identity():
    U = haar_unitary(9, 1)
    spec = hilbert.eigenphases(U)
    assert np.all(np.diff(spec.phases) >= 0.0)
    spec_id = hilbert.eigenphases(np.eye(4))
    assert np.max(np.abs(spec_id.phases)) == 0.0


def test_hamiltonian_exponentiates_back():
    U = haar_unitary(12, 2)
    H = hilbert.hamiltonian_from_unitary(U)
    assert np.max(np.abs(H - H.conj().T)) < 1e-12
    assert np.max(np.abs(scipy.linalg.expm(-1j * H) - U)) < 1e-10


def test_nonunitary_rejected():
    with pytest.raises(NonUnitary):
        hilbert.eigenphases(np.diag([1.0, 2.0]))


def test_omega_approx_first_terms_are_sine():
    # both truncated schemes collapse to sin(omega) at a single term
    w = np.linspace(0.1, 3.0, 7)
    assert np.allclose(hilbert.omega_approx(w, 1, "arcsin-center"), np.sin(w))
    assert np.allclose(hilbert.omega_approx(w, 1, "stretched"), np.sin(w))


def test_omega_approx_convergence():
    # plain-damped converges to omega pointwise on (0, 2 pi), at the slow
    # rate ~ 1/(R sin w) set by the damping
    w = np.linspace(0.5, 2.0 * np.pi - 0.5, 11)
    err = np.max(np.abs(hilbert.omega_approx(w, 400, "plain-damped") - w))
    assert err < 2.5 / (400 * np.sin(0.5))
    # arcsin-center converges on the first branch |omega| < pi/2, slower and
    # slower as sin(omega) approaches 1
    w2 = np.linspace(0.05, 1.2, 9)
    err2 = np.max(np.abs(hilbert.omega_approx(w2, 120, "arcsin-center") - w2))
    assert err2 < 1e-6


def test_omega_approx_rejects_bad_args():
    with pytest.raises(ValueError):
        hilbert.omega_approx(1.0, 0, "plain-damped")
    with pytest.raises(ValueError):
        hilbert.omega_approx(1.0, 3, "no-such-scheme")


def test_fourier_series_matches_scalar_model():
    # polynomial-in-U schemes act on eigenphases exactly like the scalar curve
    U = haar_unitary(10, 3)
    spec = hilbert.eigenphases(U)
    for scheme in ("plain-damped", "arcsin-center", "stretched"):
        H = hilbert.fourier_hamiltonian_series(U, 8, scheme)
        assert np.max(np.abs(H - H.conj().T)) < 1e-12
        got = np.sort(np.linalg.eigvalsh(H))
        want = np.sort(hilbert.omega_approx(spec.phases, 8, scheme))
        assert np.max(np.abs(got - want)) < 1e-9
