"""Massless two-component fermion in the sheet (beable) description.

Sheet variables (unit normal qhat with q3 > 0, sign s, displacement r),
their spinors and sign-flip frame operators, the momentum-basis overlap on a
discrete grid, trivial sheet evolution, and the vacuum pair correlation with
its closed form.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from .errors import PoleAtSouth, ZeroMomentum

SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass(frozen=True)
class SheetState:
    """Unit normal qhat (q3 > 0 hemisphere convention), velocity sign s, offset r."""

    qhat: tuple
    s: int
    r: float

    def __post_init__(self):
        q = np.asarray(self.qhat, dtype=float)
        if q.shape != (3,) or abs(np.linalg.norm(q) - 1.0) > 1e-10:
            raise ValueError("qhat must be a unit 3-vector")
        if self.s not in (-1, 1):
            raise ValueError("s must be +-1")
        object.__setattr__(self, "qhat", tuple(q))


def spinor(qhat, s):
    """Normalised eigenspinor chi^s of qhat . sigma with eigenvalue s.

    Closed forms with the phase convention that makes s1 chi^± = chi^∓ and
    s2 chi^± = ± i chi^∓. Limit forms are used at the north pole; the south
    pole (q3 = -1) is excluded.
    """
    q1, q2, q3 = (float(v) for v in qhat)
    if q3 <= -1.0 + 1e-12:
        raise PoleAtSouth("spinor convention undefined at q3 = -1")
    if s == 1:
        if q3 >= 1.0 - 1e-15:
            return np.array([1.0, 0.0], dtype=complex)
        return np.array(
            [np.sqrt(0.5 * (1.0 + q3)), (q1 + 1j * q2) / np.sqrt(2.0 * (1.0 + q3))]
        )
    if s == -1:
        if q3 >= 1.0 - 1e-15:
            return np.array([0.0, 1.0], dtype=complex)
        return np.array(
            [-np.sqrt(0.5 * (1.0 - q3)), (q1 + 1j * q2) / np.sqrt(2.0 * (1.0 - q3))]
        )
    raise ValueError("s must be +-1")


def frame_triad(qhat):
    """Right-handed orthonormal triad (theta_hat, phi_hat, qhat)."""
    q = np.asarray(qhat, dtype=float)
    q1, q2, _ = q
    rho = np.hypot(q1, q2)
    if rho < 1e-12:
        raise PoleAtSouth("azimuthal frame undefined on the q3 axis")
    phi_hat = np.array([-q2, q1, 0.0]) / rho
    theta_hat = np.cross(phi_hat, q)
    return theta_hat, phi_hat, q


def frame_operators(qhat):
    """Sign-flip operators s1 = theta.sigma, s2 = phi.sigma, s3 = qhat.sigma.

    Returns (s1, s2, s3, sigma_rec) where sigma_rec[i] is the reconstruction
    sigma_i = theta_i s1 + phi_i s2 + q_i s3 (equal to the Pauli matrices).
    """
    theta_hat, phi_hat, q = frame_triad(qhat)
    s1 = sum(theta_hat[i] * SIGMA[i] for i in range(3))
    s2 = sum(phi_hat[i] * SIGMA[i] for i in range(3))
    s3 = sum(q[i] * SIGMA[i] for i in range(3))
    rec = [theta_hat[i] * s1 + phi_hat[i] * s2 + q[i] * s3 for i in range(3)]
    return s1, s2, s3, rec


def hemisphere_direction(p):
    """Map a nonzero integer momentum to (qhat, p_r) with qhat in the upper hemisphere.

    The boundary q3 = 0 is tie-broken by q2 > 0, then q1 > 0.
    """
    p = np.asarray(p, dtype=float)
    norm = np.linalg.norm(p)
    if norm == 0.0:
        raise ZeroMomentum("p = 0 is the excluded edge state")
    q = p / norm
    key = (q[2], q[1], q[0])
    if key < (0.0, 0.0, 0.0):
        return -q, -norm
    return q, norm


def momentum_overlap(p, alpha, qhat, p_r, s):
    """<p, alpha | qhat, p_r, s> on the integer momentum grid.

    p_r delta_{p, qhat p_r} chi^s_alpha, the Kronecker realisation of the
    continuum p_r delta^3(p - qhat p_r) chi^s.
    """
    if p_r == 0:
        raise ZeroMomentum("p_r = 0 excluded")
    p = np.asarray(p, dtype=float)
    if np.max(np.abs(p - np.asarray(qhat) * p_r)) > 1e-9:
        return 0j
    return complex(p_r * spinor(qhat, s)[alpha])


def completeness_defect(half_range):
    """Deviation from identity of the sheet-basis completeness sum on a grid.

    Sums the normalised projectors |qhat,p_r,s><qhat,p_r,s| / p_r^2 over all
    nonzero grid momenta in [-half_range, half_range]^3 and both s, and
    returns max |sum - identity| over the (p, alpha) space.
    """
    rng = range(-half_range, half_range + 1)
    worst = 0.0
    for ix in rng:
        for iy in rng:
            for iz in rng:
                if ix == iy == iz == 0:
                    continue
                qhat, p_r = hemisphere_direction((ix, iy, iz))
                if abs(qhat[2] + 1.0) < 1e-12:
                    continue
                acc = np.zeros((2, 2), dtype=complex)
                for s in (-1, 1):
                    vec = np.array([
                        momentum_overlap((ix, iy, iz), a, qhat, p_r, s)
                        for a in (0, 1)
                    ])
                    acc += np.outer(vec, vec.conj()) / p_r**2
                worst = max(worst, float(np.max(np.abs(acc - np.eye(2)))))
    return worst


def evolve_sheet(state, t):
    """r(t) = r(0) + s t; the normal and the sign are conserved."""
    return replace(state, r=state.r + state.s * t)


def vacuum_pair_correlation(r1, r2, dr):
    """Closed-form vacuum correlation of the sign variable at separation r1 - r2.

    dr^2 / (pi^2 (r1-r2)^2) when (r1-r2)/dr is odd, 1/4 at coincidence, and 0
    for even nonzero separations.
    """
    n = (r1 - r2) / dr
    if abs(n - round(n)) > 1e-9:
        raise ValueError("r1 - r2 must be an integer multiple of dr")
    n = round(n)
    if n == 0:
        return 0.25
    if n % 2 == 0:
        return 0.0
    return dr**2 / (np.pi**2 * (r1 - r2) ** 2)


def vacuum_pair_correlation_quadrature(r1, r2, dr):
    """|(dr/2pi) int_0^{pi/dr} e^{i p (r1-r2)} dp|^2, evaluated numerically."""
    delta = r1 - r2
    re, _ = quad(lambda p: np.cos(p * delta), 0.0, np.pi / dr,
                 limit=200, epsabs=1e-13, epsrel=1e-13)
    im, _ = quad(lambda p: np.sin(p * delta), 0.0, np.pi / dr,
                 limit=200, epsabs=1e-13, epsrel=1e-13)
    return (dr / (2.0 * np.pi)) ** 2 * (re**2 + im**2)
