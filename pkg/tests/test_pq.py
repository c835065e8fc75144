import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontolab import pq

TWO_PI = 2.0 * np.pi


@given(st.floats(-3.0, 3.0), st.floats(-8.0, 8.0))
@settings(max_examples=60, deadline=None)
def test_theta_sum_equals_product(kappa, xi):
    a = pq.theta_sum(kappa, xi)
    b = pq.theta_product(kappa, xi)
    assert abs(a - b) < 1e-12 * max(1.0, abs(a))


def test_theta_vanishes_only_at_cell_corner():
    # the single zero per cell sits at (kappa, xi) = (pi, pi); elsewhere the
    # magnitude stays bounded away from zero
    assert abs(pq.theta_sum(np.pi, np.pi)) < 1e-12
    kappa = np.linspace(-np.pi + 1e-3, np.pi, 41)
    xi = np.linspace(-np.pi + 1e-3, np.pi, 41)[:, None]
    vals = np.abs(pq.theta_sum(kappa, xi))
    # zeros sit at all four corners (kappa, xi) = (+-pi, +-pi) of the cell
    away = np.hypot(np.pi - np.abs(kappa), np.pi - np.abs(xi)) > 0.5
    assert np.min(vals[np.broadcast_to(away, vals.shape)]) > 1e-3


def test_phase_function_matches_theta_argument():
    for kappa, xi in [(0.3, 1.1), (-2.0, 0.4), (2.9, -3.0)]:
        sample = pq.phase_function(kappa, xi)
        val = pq.theta_sum(kappa, xi)
        assert abs(sample.r - abs(val)) < 1e-10
        diff = np.mod(sample.phi - np.angle(val) + np.pi, TWO_PI) - np.pi
        assert abs(diff) < 1e-10


def test_phase_function_winding():
    # phi(kappa, xi + 2 pi n) - phi(kappa, xi) = n kappa, exactly in exact
    # arithmetic; the implementation carries the winding explicitly
    for n in (1, 2, -3):
        for kappa, xi in [(0.7, 0.2), (-1.3, 1.0)]:
            base = pq.phase_function(kappa, xi).phi
            lifted = pq.phase_function(kappa, xi + TWO_PI * n).phi
            assert abs(lifted - base - n * kappa) < 1e-9


def test_ab_elements_match_operator_blocks():
    w = pq.PQLatticeWindow(7)
    q, p = pq.qp_operators(w)
    Q, P = w.labels()
    i, j = 5, 30
    dQ, dP = Q[j] - Q[i], P[j] - P[i]
    assert abs(q[i, j] - (pq.a_element(dQ, dP) + (Q[i] if i == j else 0.0))) < 1e-15
    assert abs(p[i, j] - pq.b_element(dQ, dP)) < 1e-15


def test_qp_operators_hermitean():
    q, p = pq.qp_operators(11)
    assert np.max(np.abs(q - q.conj().T)) < 1e-14
    assert np.max(np.abs(p - p.conj().T)) < 1e-14


def test_commutator_block_agrees_with_full():
    w = pq.PQLatticeWindow(9)
    full = pq.commutator_defect(w)
    Q, P = w.labels()
    central = np.flatnonzero((np.abs(Q) <= 2) & (np.abs(P) <= 2))
    block = pq.commutator_defect_block(w, 2)
    assert np.max(np.abs(full[np.ix_(central, central)] - block)) < 1e-12


def test_edge_defect_decreases_with_window():
    d_small = pq.edge_defect(13, 2)
    d_large = pq.edge_defect(27, 2)
    assert d_large < d_small


def test_wavefunction_block_profile():
    # |psi|^2 is close to 1 on the unit cell around (Q, P) and small far away
    q = np.linspace(-6.0, 6.0, 241)
    psi = pq.wavefunction(q, 0, 0)
    inside = np.abs(q) < 0.35
    outside = np.abs(q) > 3.0
    assert np.min(np.abs(psi[inside])) > 0.8
    assert np.max(np.abs(psi[outside])) < 0.2


def test_wavefunction_translation_covariance():
    # shifting Q by one unit shifts the profile by one unit in q
    q = np.linspace(-4.0, 4.0, 101)
    psi0 = pq.wavefunction(q, 0, 1)
    psi1 = pq.wavefunction(q + 1.0, 1, 1)
    phase = psi1[50] / psi0[50]
    assert abs(abs(phase) - 1.0) < 1e-8
    assert np.max(np.abs(psi1 - phase * psi0)) < 1e-7


def test_overlap_richardson_consistent_with_gram():
    val = pq.wavelet_overlap(0, 0, 1, 0, span=80.0, step=0.02)
    gram = pq.wavelet_gram([(0, 0), (1, 0)], span=80.0, step=0.02)
    assert abs(gram[0, 1] - val) < 1e-12
    assert abs(gram[0, 0].imag) < 1e-12


def test_fractional_translation_kernel():
    assert pq.fractional_translation_kernel(2.0, 2) == pytest.approx(1.0)
    assert pq.fractional_translation_kernel(2.0, 5) == pytest.approx(0.0, abs=1e-15)
    a = 0.37
    assert pq.fractional_translation_kernel(a, 1) == pytest.approx(
        np.sin(np.pi * (1 - a)) / (np.pi * (1 - a)))


def test_translation_generator_shifts():
    # exp(-i a eta) applied to a smooth band-limited vector reproduces the
    # sinc-interpolated shift
    n = 64
    eta = pq.translation_generator(n)
    assert np.max(np.abs(eta - eta.conj().T)) < 1e-14
    x = np.arange(n)
    v = np.exp(-0.02 * (x - n / 2) ** 2)
    a = 0.5
    vals, vecs = np.linalg.eigh(eta)
    # exp(+i a eta) shifts by +a in this sign convention
    U = (vecs * np.exp(1j * a * vals)) @ vecs.conj().T
    shifted = U @ v
    kernel = np.array([[pq.fractional_translation_kernel(a, i - j) for j in x]
                       for i in x])
    assert np.max(np.abs(shifted - kernel @ v)) < 1e-6
