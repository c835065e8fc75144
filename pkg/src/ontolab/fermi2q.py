"""Second quantisation of finite single-particle dynamics.

Jordan-Wigner fermion fields on M modes, the bilinear Hamiltonian
H_F = sum_ji psi_j^dag h_ji psi_i on the 2^M Fock space, its subset-sum
spectrum, Heisenberg evolution of the fields (a signed permutation of the
fields at integer times when h generates a permutation), and the vacuum
with all negative levels filled together with the normal-ordered,
bounded-below Hamiltonian.
"""

import numpy as np
import scipy.linalg

from .errors import UnsupportedShape

MAX_MODES = 14

_A = np.array([[0.0, 1.0], [0.0, 0.0]])  # annihilator on one mode
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_I2 = np.eye(2)


def _kron_chain(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def jw_fields(M, check=True):
    """Annihilation operators psi_0..psi_{M-1} on the 2^M mode space.

    psi_i = Z x ... x Z x a x I x ... x I with i leading Z factors, so the
    sign picked up on a basis state is the parity of the occupied modes
    below i. With check=True the full anticommutator table
    {psi_i, psi_j^dag} = delta_ij, {psi_i, psi_j} = 0 is verified.
    """
    if not 1 <= M <= MAX_MODES:
        raise UnsupportedShape(f"mode count must be in 1..{MAX_MODES}")
    fields = []
    for i in range(M):
        factors = [_Z] * i + [_A] + [_I2] * (M - i - 1)
        fields.append(_kron_chain(factors))
    if check:
        eye = np.eye(2**M)
        for i in range(M):
            for j in range(i, M):
                anti = fields[i] @ fields[j] + fields[j] @ fields[i]
                if np.max(np.abs(anti)) > 1e-12:
                    raise AssertionError("field anticommutator is nonzero")
                mixed = (
                    fields[i] @ fields[j].conj().T + fields[j].conj().T @ fields[i]
                )
                want = eye if i == j else 0.0
                if np.max(np.abs(mixed - want)) > 1e-12:
                    raise AssertionError("mixed anticommutator is off")
    return fields


def second_quantized_h(h, fields=None):
    """H_F = sum_ji psi_j^dag h_ji psi_i for a hermitean mode matrix h.

    The Fock spectrum is the set of all subset sums of h's eigenvalues;
    the empty state has energy zero and does not evolve.
    """
    h = np.asarray(h, dtype=complex)
    M = h.shape[0]
    if h.ndim != 2 or h.shape != (M, M):
        raise UnsupportedShape("mode matrix must be square")
    if np.max(np.abs(h - h.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(h))):
        raise UnsupportedShape("mode matrix must be hermitean")
    if fields is None:
        fields = jw_fields(M, check=False)
    HF = np.zeros((2**M, 2**M), dtype=complex)
    for j in range(M):
        for i in range(M):
            if h[j, i] != 0:
                HF += h[j, i] * (fields[j].conj().T @ fields[i])
    return HF


def subset_sum_spectrum(h):
    """All sums of subsets of the mode eigenvalues, sorted ascending."""
    eps = np.linalg.eigvalsh(np.asarray(h, dtype=complex))
    sums = np.zeros(1)
    for e in eps:
        sums = np.concatenate([sums, sums + e])
    return np.sort(sums)


def permutation_mode_matrix(perm, recenter=False):
    """Mode matrix h with e^{-i h} equal to the permutation matrix of perm.

    perm maps source to image: column j carries a 1 in row perm[j].
    Eigenphases sit in [0, 2 pi); recenter=True shifts them to (-pi, pi],
    the symmetric choice used for the Dirac construction.
    """
    M = len(perm)
    if sorted(perm) != list(range(M)):
        raise UnsupportedShape("perm must be a permutation of 0..M-1")
    P = np.zeros((M, M))
    for j, pj in enumerate(perm):
        P[pj, j] = 1.0
    phases, vecs = np.linalg.eig(P)
    omega = np.mod(-np.angle(phases), 2.0 * np.pi)
    if recenter:
        omega = np.where(omega > np.pi, omega - 2.0 * np.pi, omega)
    # P is normal, so its eigenvectors can be orthonormalised
    q, _ = np.linalg.qr(vecs)
    # qr can mix degenerate eigenvectors only within equal-phase blocks,
    # which is harmless; re-derive phases for the orthonormal columns
    omega_q = np.mod(-np.angle(np.diag(q.conj().T @ P @ q)), 2.0 * np.pi)
    if recenter:
        omega_q = np.where(omega_q > np.pi, omega_q - 2.0 * np.pi, omega_q)
    h = (q * omega_q) @ q.conj().T
    return 0.5 * (h + h.conj().T)


def heisenberg_fields(h, t, fields=None):
    """e^{i H_F t} psi_k e^{-i H_F t} = sum_i (e^{-i h t})_{ki} psi_i.

    Computed from the single-particle evolution matrix; no 2^M x 2^M
    exponential is needed.
    """
    h = np.asarray(h, dtype=complex)
    M = h.shape[0]
    if fields is None:
        fields = jw_fields(M, check=False)
    u = scipy.linalg.expm(-1j * h * t)
    return [sum(u[k, i] * fields[i] for i in range(M)) for k in range(M)]


def heisenberg_permutation(h, t, tol=1e-9):
    """Check the field evolution law by dense conjugation on Fock space.

    Conjugates every psi_k with e^{-i H_F t} and compares against the
    single-particle formula sum_i (e^{-i h t})_{ki} psi_i. Returns True when
    all fields agree within tol. At integer t with h from a permutation the
    evolved fields are exactly a permutation of the original ones, and the
    Fock-space unitary itself is a signed permutation of occupation states
    (see fock_signed_permutation).
    """
    h = np.asarray(h, dtype=complex)
    M = h.shape[0]
    fields = jw_fields(M, check=False)
    HF = second_quantized_h(h, fields=fields)
    UF = scipy.linalg.expm(-1j * HF * t)
    expected = heisenberg_fields(h, t, fields=fields)
    for k in range(M):
        conj = UF.conj().T @ fields[k] @ UF
        if np.max(np.abs(conj - expected[k])) > tol:
            return False
    return True


def fock_signed_permutation(h, t=1.0, tol=1e-9):
    """Occupation-basis action of e^{-i H_F t} as a signed permutation.

    Returns (perm, signs, phase): e^{-i H_F t}|b_j> = phase * signs[j] |b_perm[j]>
    for every occupation basis state, with phase the overall unit complex
    factor of the empty state (which does not move). signs[j] is -1 exactly
    when the mode reshuffle acts as an odd permutation of the occupied
    modes, the Jordan-Wigner string sign. Raises AssertionError if the
    unitary is not a signed permutation at this t.
    """
    h = np.asarray(h, dtype=complex)
    M = h.shape[0]
    HF = second_quantized_h(h)
    UF = scipy.linalg.expm(-1j * HF * t)
    dim = 2**M
    # the all-empty occupation state is the first basis vector for this
    # kron ordering (a kills the first basis vector of each mode)
    empty = 0
    phase = UF[empty, empty]
    if abs(abs(phase) - 1.0) > tol:
        raise AssertionError("empty state is not preserved up to phase")
    perm = np.empty(dim, dtype=int)
    signs = np.empty(dim, dtype=int)
    for j in range(dim):
        col = UF[:, j] / phase
        k = int(np.argmax(np.abs(col)))
        if abs(abs(col[k]) - 1.0) > tol or np.sum(np.abs(col) > tol) != 1:
            raise AssertionError("Fock unitary is not a signed permutation")
        if abs(col[k] - 1.0) < tol:
            signs[j] = 1
        elif abs(col[k] + 1.0) < tol:
            signs[j] = -1
        else:
            raise AssertionError("basis image carries a non-real phase")
        perm[j] = k
    return perm, signs, phase


def dirac_vacuum(h, fields=None, tol=1e-12):
    """Vacuum with all negative levels filled, and the normal-ordered H_F.

    Returns (state, energy, H_normal): state is the filled-sea vector on the
    2^M space, energy = sum of the negative mode eigenvalues, and
    H_normal = H_F - energy * I is bounded below by 0. The subtraction
    constant is conventional; we subtract the filled-sea energy.
    """
    h = np.asarray(h, dtype=complex)
    M = h.shape[0]
    if fields is None:
        fields = jw_fields(M, check=False)
    eps, modes = np.linalg.eigh(h)
    state = _empty_state(fields)
    energy = 0.0
    for n in range(M):
        if eps[n] < -tol:
            creator = sum(modes[i, n] * fields[i].conj().T for i in range(M))
            state = creator @ state
            energy += eps[n]
    state = state / np.linalg.norm(state)
    HF = second_quantized_h(h, fields=fields)
    H_normal = HF - energy * np.eye(2**M)
    return state, energy, H_normal


def number_operator(fields):
    """Total occupation sum_i psi_i^dag psi_i; commutes with any H_F."""
    return sum(psi.conj().T @ psi for psi in fields)


def _empty_state(fields):
    occ = number_operator(fields)
    vals, vecs = np.linalg.eigh(occ)
    idx = int(np.argmin(vals))
    if vals[idx] > 1e-9:
        raise AssertionError("no empty state found")
    v = vecs[:, idx]
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])
