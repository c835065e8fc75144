"""Harmonic rotator: the SU(2) realisation of an N-state cogwheel.

Angular-momentum operators, oscillator-like x and p analogues, the beable
angle operator sigma, and the transform to the x eigenframe via the stable
log-scaled recursion.
"""

from dataclasses import dataclass
from math import lgamma

import numpy as np

from .errors import RecursionUnderflow


@dataclass(frozen=True)
class RotatorParams:
    """ell is integer or half-odd-integer >= 1/2; the space has N = 2*ell+1 states."""

    ell: float

    def __post_init__(self):
        two_ell = round(2 * self.ell)
        if abs(2 * self.ell - two_ell) > 1e-12 or two_ell < 1:
            raise ValueError("ell must be a half-integer >= 1/2")
        object.__setattr__(self, "ell", two_ell / 2.0)

    @property
    def N(self):
        return round(2 * self.ell) + 1


@dataclass(frozen=True)
class AngularOperators:
    L3: np.ndarray
    Lplus: np.ndarray
    Lminus: np.ndarray
    x: np.ndarray
    p: np.ndarray
    hamiltonian: np.ndarray


def build_operators(params):
    """Spin-ell matrices in the basis |k>, k = 0..N-1, m = k - ell.

    L+|k> = sqrt((k+1)(2 ell - k)) |k+1>, L3 = diag(k - ell),
    x = L1/sqrt(ell), p = -L2/sqrt(ell), H = (2 pi / N) diag(k).
    The exact commutator is [x, p] = i (1 - (2 ell + 1) H / (2 pi ell)).
    """
    if not isinstance(params, RotatorParams):
        params = RotatorParams(params)
    ell, N = params.ell, params.N
    k = np.arange(N)
    L3 = np.diag(k - ell).astype(complex)
    Lplus = np.zeros((N, N), dtype=complex)
    kk = np.arange(N - 1)
    Lplus[kk + 1, kk] = np.sqrt((kk + 1.0) * (2 * ell - kk))
    Lminus = Lplus.conj().T
    L1 = 0.5 * (Lplus + Lminus)
    L2 = -0.5j * (Lplus - Lminus)
    x = L1 / np.sqrt(ell)
    p = -L2 / np.sqrt(ell)
    H = (2.0 * np.pi / N) * np.diag(k).astype(complex)
    return AngularOperators(L3=L3, Lplus=Lplus, Lminus=Lminus, x=x, p=p, hamiltonian=H)


def sigma_operator(params):
    """Beable angle operator in the energy basis.

    <m+k| sigma |m> = i (-1)^k / (2 sin(pi k / N)) for k != 0 (indices read
    mod N), vanishing diagonal. For integer ell its eigenvalues are exactly
    the integers -ell..ell and exp(2 pi i sigma / N) cyclically raises m.
    """
    if not isinstance(params, RotatorParams):
        params = RotatorParams(params)
    N = params.N
    idx = np.arange(N)
    k = (idx[:, None] - idx[None, :]) % N  # row m+k, column m
    sig = np.zeros((N, N), dtype=complex)
    nz = k != 0
    sig[nz] = 1j * (-1.0) ** k[nz] / (2.0 * np.sin(np.pi * k[nz] / N))
    return sig


def _denormalised_row(ell, two_m1):
    """Log-magnitude + sign of <m1||| m3> for m3 = -ell..ell at fixed 2*m1.

    Recursion on the de-normalised x-eigenvector components:
        2 m1 w(m3) = (ell - m3) w(m3+1) + (ell + m3) w(m3-1).
    Carried as (log|w|, sign) to survive large ell.
    """
    N = round(2 * ell) + 1
    logs = np.full(N, -np.inf)
    signs = np.zeros(N)
    logs[0], signs[0] = 0.0, 1.0  # w(-ell) = 1, overall scale irrelevant
    w_prev = 0.0  # w(-ell-1), coefficient (ell + m3) vanishes there anyway
    w_cur = 1.0
    scale = 0.0  # running log-scale of (w_prev, w_cur)
    for j in range(N - 1):
        m3_twice = -round(2 * ell) + 2 * j
        coeff_up = ell - m3_twice / 2.0  # ell - m3, never 0 for j < N-1
        coeff_dn = ell + m3_twice / 2.0
        w_next = (two_m1 * w_cur - coeff_dn * w_prev) / coeff_up
        w_prev, w_cur = w_cur, w_next
        mag = max(abs(w_prev), abs(w_cur))
        if mag == 0.0:
            if w_cur == 0.0 and w_prev == 0.0:
                raise RecursionUnderflow("recursion collapsed to zero")
            mag = 1.0
        if not np.isfinite(mag):
            raise RecursionUnderflow("recursion overflowed at ell=%s" % ell)
        if mag > 1e100 or mag < 1e-100:
            w_prev /= mag
            w_cur /= mag
            scale += np.log(mag)
        if w_cur == 0.0:
            logs[j + 1], signs[j + 1] = -np.inf, 0.0
        else:
            logs[j + 1] = np.log(abs(w_cur)) + scale
            signs[j + 1] = np.sign(w_cur)
    return logs, signs


def x_frame_transform(params):
    """Unitary of overlaps <m1|m3> between L1 (=x) and L3 eigenbases.

    Columns are indexed by the L1 eigenvalue m1 = -ell..ell, rows by m3.
    Built from the three-term recursion on de-normalised states, carried in
    log-magnitude + sign, then re-normalised column by column.
    """
    if not isinstance(params, RotatorParams):
        params = RotatorParams(params)
    ell, N = params.ell, params.N
    m3 = np.arange(N) - ell
    # de-normalisation factors sqrt((ell+m)! (ell-m)!) in log form
    log_norm = 0.5 * np.array(
        [lgamma(ell + m + 1) + lgamma(ell - m + 1) for m in m3]
    )
    V = np.zeros((N, N))
    for col in range(N):
        two_m1 = 2 * col - round(2 * ell)
        logs, signs = _denormalised_row(ell, two_m1)
        logs = logs - log_norm  # back to normalised |m3> components
        # the forward recursion only tracks the growing side; where the true
        # component decays it is swamped by the faster-growing spurious
        # solution. The recursion is invariant under m3 -> -m3, so the
        # reversed array is the solution launched from the other end, and
        # each branch is trustworthy exactly where it is the smaller of the
        # two. Persymmetry makes the two scales equal, so glue at the peak
        # of the pointwise minimum.
        m_logs = logs[::-1].copy()
        m_signs = signs[::-1].copy()
        both = np.where(np.isfinite(logs) & np.isfinite(m_logs),
                        np.minimum(logs, m_logs), -np.inf)
        k = int(np.argmax(both))
        rel_sign = signs[k] * m_signs[k]
        if np.isfinite(m_logs[k]) and rel_sign != 0.0:
            shift = logs[k] - m_logs[k]
            logs[k + 1:] = m_logs[k + 1:] + shift
            signs[k + 1:] = m_signs[k + 1:] * rel_sign
        top = np.max(logs[np.isfinite(logs)])
        comp = signs * np.exp(logs - top)
        V[:, col] = comp / np.linalg.norm(comp)
    # fix the free sign per column: make the largest-magnitude entry positive
    for col in range(N):
        lead = np.argmax(np.abs(V[:, col]))
        if V[lead, col] < 0:
            V[:, col] = -V[:, col]
    return V.astype(complex)


def deterministic_evolution_check(params, t, tol=1e-9):
    """True iff one period-step of U maps each sigma eigenstate to the next.

    U = exp(-iH) advances the beable by one unit: U^t |sigma=j> is (up to
    phase) |sigma = j+t mod N>.
    """
    if not isinstance(params, RotatorParams):
        params = RotatorParams(params)
    N = params.N
    ops = build_operators(params)
    U = np.diag(np.exp(-1j * np.diag(ops.hamiltonian)))
    sig = sigma_operator(params)
    vals, vecs = np.linalg.eigh(sig)
    order = np.argsort(vals)
    vecs = vecs[:, order]
    Ut = np.linalg.matrix_power(U, int(t) % N)
    for j in range(N):
        target = vecs[:, (j + int(t)) % N]
        overlap = abs(np.vdot(target, Ut @ vecs[:, j]))
        if abs(overlap - 1.0) > tol:
            return False
    return True
