import numpy as np
import pytest
import scipy.linalg
from fractions import Fraction

from ontolab import bch
from ontolab.errors import ResonanceSingularity


def random_antihermitean(n, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    A = 0.5 * (A - A.conj().T)
    return scale * A / np.linalg.norm(A, 2)


def test_nested_word_convention():
    rng = np.random.default_rng(0)
    S = rng.normal(size=(3, 3))
    D = rng.normal(size=(3, 3))
    word = bch.nested_word("DSD", {"S": S, "D": D})
    assert np.allclose(word, bch.comm(D, bch.comm(S, D)))


def test_bch_truncation_against_logm():
    P = random_antihermitean(5, 1, 0.15)
    Q = random_antihermitean(5, 2, 0.15)
    exact = scipy.linalg.logm(scipy.linalg.expm(P) @ scipy.linalg.expm(Q))
    errs = [np.linalg.norm(bch.bch_truncated(P, Q, k) - exact, 2)
            for k in (1, 2, 3, 4)]
    # each added order shrinks the residual
    assert errs[1] < errs[0] and errs[2] < errs[1] and errs[3] < errs[2]
    assert errs[3] < 5e-6


def test_conjugacy_expansion_spectra():
    # eigenphases of exp(R~) approach those of exp(S+D) exp(S-D) as the
    # order grows; S and D anti-hermitean per the stated convention
    S = random_antihermitean(6, 3, 0.1)
    D = random_antihermitean(6, 4, 0.1)
    target = np.sort(np.angle(np.linalg.eigvals(
        scipy.linalg.expm(S + D) @ scipy.linalg.expm(S - D))))
    errs = []
    for order in (1, 3, 5, 7):
        got = np.sort(np.angle(np.linalg.eigvals(
            scipy.linalg.expm(bch.conjugacy_expansion(S, D, order)))))
        errs.append(np.max(np.abs(got - target)))
    assert errs[1] < errs[0] and errs[2] < errs[1] and errs[3] < errs[2]
    assert errs[3] < 1e-9


def test_conjugacy_symmetries_exact():
    # every word carries an even count of D and an odd count of S, so the
    # expansion is exactly even in D and odd in S (bitwise, not approximately)
    S = random_antihermitean(5, 5, 0.3)
    D = random_antihermitean(5, 6, 0.3)
    R = bch.conjugacy_expansion(S, D, 7)
    assert np.array_equal(R, bch.conjugacy_expansion(S, -D, 7))
    assert np.array_equal(-R, bch.conjugacy_expansion(-S, D, 7))


def test_conjugator_first_terms():
    S = random_antihermitean(4, 7, 0.3)
    D = random_antihermitean(4, 8, 0.3)
    F = bch.conjugator_first_terms(S, D)
    want = -D / 2 + bch.comm(S, bch.comm(S, D)) / 24
    assert np.allclose(F, want)


def test_interaction_series_coefficients():
    coeffs = bch.interaction_series_coefficients(4)
    assert coeffs == [1, Fraction(1, 24), Fraction(7, 5760), Fraction(31, 967680)]


def test_interaction_kernel_matches_series_near_zero():
    x = np.array([0.0, 1e-7, 0.3, -0.3])
    vals = bch.interaction_kernel(x)
    series = 1.0 + x**2 / 24 + 7 * x**4 / 5760
    assert np.max(np.abs(vals - series)) < 1e-6
    assert vals[0] == 1.0


def test_interaction_expansion_first_order():
    # compare against exact log of the sandwich product on 6x6 instances
    # keep the spectrum inside (-pi, pi) so the principal matrix log is the
    # right branch for the oracle comparison
    rng = np.random.default_rng(9)
    E = np.sort(rng.uniform(-2.8, 2.8, size=6))
    H0 = np.diag(E).astype(complex)
    B = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    B = 0.5 * (B + B.conj().T)
    B /= np.linalg.norm(B, 2)

    def exact_h(eps):
        U = (scipy.linalg.expm(-0.5j * H0) @ scipy.linalg.expm(-1j * eps * B)
             @ scipy.linalg.expm(-0.5j * H0))
        return 1j * scipy.linalg.logm(U)

    def defect(eps):
        got = bch.interaction_expansion(H0, eps * B)
        return np.linalg.norm(got - exact_h(eps), 2)

    d1, d2 = defect(0.08), defect(0.04)
    assert d1 / d2 == pytest.approx(4.0, rel=0.3)


def test_interaction_resonance_detected():
    H0 = np.diag([0.0, 2.0 * np.pi]).astype(complex)
    B = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    with pytest.raises(ResonanceSingularity):
        bch.interaction_expansion(H0, 0.01 * B)


def test_ca_hamiltonian_density_support():
    # with K, L single-site spin operators embedded on a 4-ring, the order-3
    # correction stays within one link of its site
    n, d = 4, 2
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)

    def embed(op, site):
        out = np.eye(1, dtype=complex)
        for s in range(n):
            out = np.kron(out, op if s == site else np.eye(d))
        return out

    K = [embed(sx, r) for r in range(n)]
    L = [embed(sz, r) for r in range(n)]
    t1 = bch.ca_hamiltonian_density(K, L, 1)
    t3 = bch.ca_hamiltonian_density(K, L, 3)
    assert all(np.array_equal(a, b) for a, b in zip(t1, K))
    # sum of densities is translation covariant: all per-site terms are
    # related by the cyclic relabeling, so their traces agree
    traces = [np.trace(t).real for t in t3]
    assert np.allclose(traces, traces[0])


def test_bad_orders_rejected():
    S = np.zeros((2, 2))
    with pytest.raises(ValueError):
        bch.bch_truncated(S, S, 5)
    with pytest.raises(ValueError):
        bch.conjugacy_expansion(S, S, 2)
    with pytest.raises(ValueError):
        bch.ca_hamiltonian_density([S], [S], 4)
