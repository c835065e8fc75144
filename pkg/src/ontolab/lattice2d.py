"""Integer boson field on a periodic line and its quantum counterparts.

Exact reversible integer dynamics of (Q, P+), the left/right mover fields,
the exactly conserved classical energy, the cut-off quantum kernel M_s with
its closed forms, the d-dimensional dispersion stability test, and the
parity-doubling Boolean product automaton.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad


@dataclass(frozen=True)
class IntegerFieldState:
    """Q at integer time t, Pplus = P at t + 1/2, on a periodic even-size ring."""

    Q: np.ndarray
    Pplus: np.ndarray

    def __post_init__(self):
        Q = np.asarray(self.Q, dtype=np.int64)
        P = np.asarray(self.Pplus, dtype=np.int64)
        if Q.shape != P.shape or Q.ndim != 1:
            raise ValueError("Q and Pplus must be 1-d arrays of the same length")
        if len(Q) % 2:
            raise ValueError("ring size must be even")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "Pplus", P)

    @property
    def L(self):
        return len(self.Q)


def step(state):
    """One forward step: Q(t+1) = Q + P+, then P+(t+3/2) = P+ + laplacian Q(t+1)."""
    Q1 = state.Q + state.Pplus
    lap = np.roll(Q1, 1) + np.roll(Q1, -1) - 2 * Q1
    return IntegerFieldState(Q=Q1, Pplus=state.Pplus + lap)


def step_back(state):
    """Exact inverse of step (integer arithmetic)."""
    lap = np.roll(state.Q, 1) + np.roll(state.Q, -1) - 2 * state.Q
    P0 = state.Pplus - lap
    return IntegerFieldState(Q=state.Q - P0, Pplus=P0)


@dataclass(frozen=True)
class MoverField:
    AL: np.ndarray
    AR: np.ndarray


def movers(state):
    """A^L = P+ + Q(x) - Q(x-1) and A^R = P+ + Q(x) - Q(x+1).

    Under one step the left-mover shifts one site toward smaller x and the
    right-mover one site toward larger x, exactly.
    """
    Q, P = state.Q, state.Pplus
    return MoverField(AL=P + Q - np.roll(Q, 1), AR=P + Q - np.roll(Q, -1))


def classical_energy(state):
    """Exactly conserved energy as a Fraction.

    E = (1/2) sum P+^2 + (1/2) sum (Q + P+)(2Q - Q(x-1) - Q(x+1)).
    """
    Q = [int(v) for v in state.Q]
    P = [int(v) for v in state.Pplus]
    L = len(Q)
    s1 = sum(p * p for p in P)
    s2 = sum((Q[x] + P[x]) * (2 * Q[x] - Q[x - 1] - Q[(x + 1) % L])
             for x in range(L))
    return Fraction(s1 + s2, 2)


def classical_energy_momentum(state):
    """Momentum-space evaluation of the same energy (float, FFT cross-check).

    E = (1/2) sum_k |p_k + (1 - e^{-ik}) q_k|^2 - |(1 - cos k) q_k|^2 ... the
    difference-of-squares form; implemented directly from the position-space
    definition transformed with the unitary FFT, so it equals the exact value
    to rounding.
    """
    Q = state.Q.astype(float)
    P = state.Pplus.astype(float)
    L = len(Q)
    qk = np.fft.fft(Q) / np.sqrt(L)
    pk = np.fft.fft(P) / np.sqrt(L)
    k = 2.0 * np.pi * np.arange(L) / L
    w = 2.0 * (1.0 - np.cos(k))
    quad_part = 0.5 * np.sum(np.abs(pk) ** 2 + w * np.abs(qk) ** 2)
    cross = 0.5 * np.real(np.sum(w * np.conj(pk) * qk))
    return float(quad_part + cross)


def quantum_kernel_closed(s, lam):
    """Closed-form kernel M_s with infrared cut-off lambda, as printed.

    Even s: (1/2)[log(2/lambda) - sum_{k=0}^{s/2-1} 1/(k+1/2)].
    Odd s:  (1/2)[log(2 lambda) + sum_{k=1}^{(s-1)/2} 1/k].
    """
    s = abs(int(s))
    if not 0.0 < lam < 1.0:
        raise ValueError("lambda must be in (0, 1)")
    if s % 2 == 0:
        return 0.5 * (np.log(2.0 / lam) - sum(1.0 / (k + 0.5) for k in range(s // 2)))
    return 0.5 * (np.log(2.0 * lam) + sum(1.0 / k for k in range(1, (s - 1) // 2 + 1)))


def quantum_kernel_quadrature(s, lam):
    """Direct quadrature (1/2pi) int_{-pi+lam}^{pi-lam} (kappa / 2 sin kappa) e^{-is kappa}.

    The integrand is even times cos(s kappa); adaptive quadrature away from
    the endpoint where 1/sin blows up.
    """
    s = abs(int(s))
    if not 0.0 < lam < 1.0:
        raise ValueError("lambda must be in (0, 1)")

    def f(kappa):
        return kappa / (2.0 * np.sin(kappa)) * np.cos(s * kappa)

    val, _ = quad(f, 0.0, np.pi - lam, limit=400, epsabs=1e-12, epsrel=1e-12)
    return val / np.pi


def quantum_kernel(s, lam):
    """Kernel value; see quantum_kernel_closed for the printed branch forms."""
    return quantum_kernel_closed(s, lam)


def dispersion_value(k):
    """omega-equation right-hand side sum_i 2 (1 - cos k_i)."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    return float(np.sum(2.0 * (1.0 - np.cos(k))))


def mode_matrix(k):
    """One-step linear map of a single Fourier mode (q, p+) of the update."""
    w = dispersion_value(k)
    return np.array([[1.0 - w, 1.0], [-w, 1.0]])


def dispersion_stability(d, k):
    """Classify a wave vector: 'stable' iff sum 2(1 - cos k_i) <= 4.

    Returns (classification, value, spectral_radius) where the radius is that
    of the one-step mode map; stable modes sit on the unit circle.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if len(k) != d:
        raise ValueError("wave vector must have d components")
    val = dispersion_value(k)
    radius = float(np.max(np.abs(np.linalg.eigvals(mode_matrix(k)))))
    return ("stable" if val <= 4.0 else "unstable", val, radius)


def parity_ca_step(prev, curr):
    """Boolean product automaton on a torus of +-1 values.

    sigma(x, t+1) = prod_i sigma(x+e_i, t) sigma(x-e_i, t) * sigma(x, t-1).
    Takes the layers at t-1 and t, returns (curr, next).
    """
    prev = np.asarray(prev)
    curr = np.asarray(curr)
    if prev.shape != curr.shape:
        raise ValueError("layers must share a shape")
    if not (np.all(np.abs(prev) == 1) and np.all(np.abs(curr) == 1)):
        raise ValueError("fields must be +-1 valued")
    nxt = prev.copy()
    for axis in range(curr.ndim):
        nxt = nxt * np.roll(curr, 1, axis=axis) * np.roll(curr, -1, axis=axis)
    return curr, nxt


def random_state(L, seed, span=4):
    """Small random integer state for experiments, seeded."""
    rng = np.random.default_rng(seed)
    return IntegerFieldState(
        Q=rng.integers(-span, span + 1, size=L),
        Pplus=rng.integers(-span, span + 1, size=L),
    )
