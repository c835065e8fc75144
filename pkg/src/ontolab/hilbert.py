"""Finite-dimensional Hilbert-space core.

Eigenphase decompositions of unitaries, Hamiltonian extraction via the
principal logarithm, and truncated Fourier / arcsin approximations of the
phase function together with their scalar model curves.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
import scipy.linalg

from .errors import NonUnitary

DIM_CAP = 4096
_TWO_PI = 2.0 * np.pi


def _as_matrix(U):
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NonUnitary("expected a square matrix, got shape %s" % (U.shape,))
    if U.shape[0] > DIM_CAP:
        raise NonUnitary("dimension %d exceeds the dense cap %d" % (U.shape[0], DIM_CAP))
    return U


def check_unitary(U, tol=1e-8):
    """Raise NonUnitary unless max|U†U - 1| <= tol. Returns U as complex ndarray."""
    U = _as_matrix(U)
    defect = np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))
    if defect > tol:
        raise NonUnitary("unitarity defect %.3e exceeds %.1e" % (defect, tol))
    return U


@dataclass(frozen=True)
class Spectrum:
    """Eigenphases omega in [0, 2pi), ascending, with an orthonormal eigenbasis.

    The decomposition satisfies U = vectors @ diag(exp(-i*phases)) @ vectors†.
    """

    phases: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self):
        return len(self.phases)

    def reconstruct(self):
        V = self.vectors
        return (V * np.exp(-1j * self.phases)) @ V.conj().T


def eigenphases(U, tol=1e-8):
    """Spectral decomposition of a unitary with phases fixed to [0, 2pi).

    Uses the complex Schur form, which is diagonal for normal matrices and
    hands back an orthonormal eigenbasis even through degeneracies.
    """
    U = check_unitary(U, tol)
    T, Z = scipy.linalg.schur(U, output="complex")
    lam = np.diag(T)
    phases = np.mod(-np.angle(lam), _TWO_PI)
    # collapse values that rounded up to 2pi
    phases[phases >= _TWO_PI - 1e-15] = 0.0
    order = np.argsort(phases, kind="stable")
    return Spectrum(phases=phases[order], vectors=Z[:, order])


def hamiltonian_from_unitary(U, shift=None, tol=1e-8):
    """Hermitean H with exp(-iH) = U.

    Eigenvalues are the eigenphases plus optional caller-supplied shifts
    (one real number per eigenvector, in ascending-phase order); the natural
    choice is 2pi times an integer sector label.
    """
    spec = eigenphases(U, tol)
    lam = spec.phases.astype(float)
    if shift is not None:
        shift = np.asarray(shift, dtype=float)
        if shift.shape not in ((), (spec.dim,)):
            raise ValueError("shift must be scalar or one value per eigenvector")
        lam = lam + shift
    V = spec.vectors
    H = (V * lam) @ V.conj().T
    return 0.5 * (H + H.conj().T)


def _arcsin_coeff(n):
    """Coefficient of z^(2n+1) in arcsin z, as an exact Fraction."""
    return Fraction(comb(2 * n, n), 4**n * (2 * n + 1))


def _stretched_coeff(k):
    """Coefficient b_k of the expansion of arcsin(z) / sqrt(1 - z^2)."""
    return Fraction(4**k, (2 * k + 1) * comb(2 * k, k))


def omega_approx(omega, R, scheme):
    """Scalar model curve of the approximate phase for each scheme.

    plain-damped : 2*atan2(e^{1/R} - cos w, sin w), the closed resummation of
                   pi - 2 sum_n sin(n w) e^{-n/R} / n.
    arcsin-center: sum of the first R odd arcsin-series powers of sin w.
    stretched    : sin w times the first R terms of arcsin(z)/sqrt(1-z^2)
                   evaluated at z with z^2 = (1 - cos w)/2.
    """
    omega = np.asarray(omega, dtype=float)
    if R < 1:
        raise ValueError("R must be >= 1")
    if scheme == "plain-damped":
        return 2.0 * np.arctan2(np.exp(1.0 / R) - np.cos(omega), np.sin(omega))
    if scheme == "arcsin-center":
        s = np.sin(omega)
        acc = np.zeros_like(s)
        for n in range(int(R)):
            acc = acc + float(_arcsin_coeff(n)) * s ** (2 * n + 1)
        return acc
    if scheme == "stretched":
        s = np.sin(omega)
        z2 = 0.5 * (1.0 - np.cos(omega))
        acc = np.zeros_like(s)
        for k in range(int(R)):
            acc = acc + float(_stretched_coeff(k)) * z2**k
        return s * acc
    raise ValueError("unknown scheme %r" % (scheme,))


def fourier_hamiltonian_series(U, R, scheme="plain-damped", tol=1e-8):
    """Truncated hermitean approximation of the Hamiltonian of U.

    The plain-damped scheme applies the exact resummation of the damped
    Fourier sum spectrally (identical to summing the series to machine
    precision). The other two are finite polynomials in U and U^{-1}:
    sin w -> (i/2)(U - U†) and (1 - cos w)/2 -> (2 - U - U†)/4.
    """
    U = check_unitary(U, tol)
    if scheme == "plain-damped":
        spec = eigenphases(U, tol)
        lam = omega_approx(spec.phases, R, scheme)
        V = spec.vectors
        H = (V * lam) @ V.conj().T
    elif scheme == "arcsin-center":
        s = 0.5j * (U - U.conj().T)
        s2 = s @ s
        H = np.zeros_like(U)
        term = s.copy()
        for n in range(int(R)):
            if n:
                term = s2 @ term
            H = H + float(_arcsin_coeff(n)) * term
    elif scheme == "stretched":
        s = 0.5j * (U - U.conj().T)
        z2 = 0.25 * (2.0 * np.eye(U.shape[0]) - U - U.conj().T)
        H = np.zeros_like(U)
        term = np.eye(U.shape[0], dtype=complex)
        for k in range(int(R)):
            if k:
                term = z2 @ term
            H = H + float(_stretched_coeff(k)) * term
        H = s @ H
    else:
        raise ValueError("unknown scheme %r" % (scheme,))
    return 0.5 * (H + H.conj().T)
