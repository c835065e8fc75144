"""Combining the exponentials of two half-step generators.

Truncated Baker-Campbell-Hausdorff expansion, the compact conjugacy-class
variant in S = (P+Q)/2 and D = (P-Q)/2, locality-graded Hamiltonian density
terms for alternating two-step automata, and the first-order interaction
expansion with the x / (2 sin(x/2)) level-pair kernel.

Words over the generator alphabet are evaluated as right-nested
commutators: X1 X2 X3 means [X1, [X2, X3]].
"""

from fractions import Fraction

import numpy as np
import sympy

from .errors import ResonanceSingularity


def comm(X, Y):
    return X @ Y - Y @ X


def nested_word(letters, alphabet):
    """Right-nested commutator of a letter sequence, e.g. 'DSD' -> [D,[S,D]]."""
    mats = [alphabet[ch] for ch in letters]
    out = mats[-1]
    for X in reversed(mats[:-1]):
        out = comm(X, out)
    return out


def bch_truncated(P, Q, order):
    """R with e^P e^Q = e^R, truncated: supported orders 1..4.

    R = P + Q + (1/2)[P,Q] + (1/12)[P,[P,Q]] + (1/12)[[P,Q],Q]
      + (1/24)[[P,[P,Q]],Q] + higher orders.
    """
    if not 1 <= order <= 4:
        raise ValueError("order must be in 1..4")
    P = np.asarray(P, dtype=complex)
    Q = np.asarray(Q, dtype=complex)
    R = P + Q
    if order >= 2:
        PQ = comm(P, Q)
        R = R + PQ / 2
    if order >= 3:
        R = R + comm(P, PQ) / 12 + comm(PQ, Q) / 12
    if order >= 4:
        R = R + comm(comm(P, comm(P, Q)), Q) / 24
    return R


# conjugacy-class expansion: rational coefficient per word over {S, D}
CONJUGACY_WORDS = {
    1: ((Fraction(2), "S"),),
    3: ((Fraction(-1, 12), "DSD"),),
    5: ((Fraction(8, 960), "DSSSD"), (Fraction(-1, 960), "DDDSD")),
    7: (
        (Fraction(-51, 60480), "DSSSSSD"),
        (Fraction(-76, 60480), "DDSDSSD"),
        (Fraction(33, 60480), "DDDSSSD"),
        (Fraction(44, 60480), "DSDDSSD"),
        (Fraction(-3, 8 * 60480), "DDDDDSD"),
    ),
}


def conjugacy_expansion(S, D, order):
    """R~ with e^{R~} conjugate to e^{S+D} e^{S-D}; order in {1, 3, 5, 7}.

    S and D are the half-sum and half-difference of the two exponents
    themselves (anti-hermitean for unitary factors, e.g. S = -i(A+B)/2);
    the printed coefficients belong to that convention. Only even counts of
    D and odd counts of S appear:
    R~ = 2S - (1/12) DSD + (1/960) (8 DSSSD - DDDSD) + ... with words read
    as right-nested commutators. Conjugation preserves spectra, so the
    checkable statement is that eigenphases of e^{R~} match the product's.
    """
    if order not in (1, 3, 5, 7):
        raise ValueError("order must be one of 1, 3, 5, 7")
    S = np.asarray(S, dtype=complex)
    D = np.asarray(D, dtype=complex)
    alphabet = {"S": S, "D": D}
    R = np.zeros_like(S)
    for n in (1, 3, 5, 7):
        if n > order:
            break
        for coeff, word in CONJUGACY_WORDS[n]:
            if word == "S":
                R = R + float(coeff) * S
            else:
                R = R + float(coeff) * nested_word(word, alphabet)
    return R


def conjugator_first_terms(S, D):
    """Leading terms of the conjugator exponent: F = -D/2 + (1/24) S S D."""
    S = np.asarray(S, dtype=complex)
    D = np.asarray(D, dtype=complex)
    return -D / 2 + nested_word("SSD", {"S": S, "D": D}) / 24


def ca_hamiltonian_density(K, L, order):
    """Per-site Hamiltonian density terms of an alternating automaton.

    K, L: lists of full-space matrices, one per site of a ring, commuting
    beyond nearest neighbours. Returns the list of per-site terms
    H~_1(r) = K(r) for order 1, plus
    H~_3(r) = (1/96) sum_{s1, s2} [L(r), [K(s1), L(s2)]] for order 3
    (the sums restricted to the neighbourhood where commutators survive).
    Each H~_n(r) is supported within n-1 links of r.
    """
    if order not in (1, 3):
        raise ValueError("order must be 1 or 3")
    n = len(K)
    if len(L) != n:
        raise ValueError("K and L must have one entry per site")
    terms = [k.astype(complex).copy() for k in K]
    if order >= 3:
        for r in range(n):
            acc = np.zeros_like(terms[r])
            for ds1 in (-1, 0, 1):
                s1 = (r + ds1) % n
                for ds2 in (-2, -1, 0, 1, 2):
                    s2 = (r + ds2) % n
                    inner = comm(K[s1], L[s2])
                    if np.max(np.abs(inner)) == 0.0:
                        continue
                    acc = acc + comm(L[r], inner)
            terms[r] = terms[r] + acc / 96
    return terms


def interaction_series_coefficients(n_terms):
    """Exact rational Taylor coefficients of x / (2 sin(x/2)) in even powers.

    Returns [c0, c1, ...] with the series sum_k c_k x^{2k}; the first three
    are 1, 1/24, 7/5760.
    """
    x = sympy.symbols("x")
    expr = x / (2 * sympy.sin(x / 2))
    series = sympy.series(expr, x, 0, 2 * n_terms).removeO()
    return [sympy.Rational(series.coeff(x, 2 * k)) for k in range(n_terms)]


def interaction_kernel(x):
    """x / (2 sin(x/2)) with the removable singularity filled at 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-12
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0, safe / (2.0 * np.sin(0.5 * safe)))


def interaction_expansion(H0, B, order=None, eps=1e-6, tol=1e-12):
    """First order in B of the Hamiltonian of e^{-i H0/2} e^{-iB} e^{-i H0/2}.

    In the H0 eigenbasis H_{kl} = H0_{kl} + f(E_k - E_l) B_{kl} with
    f(x) = x / (2 sin(x/2)). order, if given, truncates f to that many even
    series terms. Raises ResonanceSingularity when a level pair coupled by B
    has |E_k - E_l| >= 2 pi - eps.
    """
    H0 = np.asarray(H0, dtype=complex)
    B = np.asarray(B, dtype=complex)
    E, V = np.linalg.eigh(H0)
    Bb = V.conj().T @ B @ V
    dE = E[:, None] - E[None, :]
    coupled = np.abs(Bb) > tol
    if np.any(coupled & (np.abs(dE) >= 2.0 * np.pi - eps)):
        raise ResonanceSingularity("level spacing at the 2 pi resonance")
    if order is None:
        kernel = interaction_kernel(dE)
    else:
        coeffs = interaction_series_coefficients(order)
        kernel = sum(float(c) * dE ** (2 * k) for k, c in enumerate(coeffs))
    Hb = np.diag(E).astype(complex) + kernel * Bb
    H = V @ Hb @ V.conj().T
    return 0.5 * (H + H.conj().T)
