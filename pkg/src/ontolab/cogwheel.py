"""Finite cyclic automata and their quantum spectra.

Cogwheels (deterministic N-state cycles), general permutation models built
from disjoint cycles, and lossy automata with their information-equivalence
classes and the time-reversal conjugator of the all-to-one block.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotBijective, UnsupportedShape


def shift_unitary(N):
    """Permutation unitary of the N-state cycle: U|n> = |n+1 mod N>."""
    U = np.zeros((N, N), dtype=complex)
    U[(np.arange(N) + 1) % N, np.arange(N)] = 1.0
    return U


def dft_basis(N):
    """Unitary with columns <n|k> = exp(2 pi i k n / N) / sqrt(N).

    Column k is the energy eigenstate of the N-cycle with phase 2 pi k / N.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(N)
    return np.exp(2j * np.pi * np.outer(n, n) / N) / np.sqrt(N)


def hamiltonian_matrix(N):
    """Hermitean generator of the N-cycle in the ontological basis.

    H = pi (1 - 1/N) - (pi/N) sum_{n=1}^{N-1} (i / tan(pi n / N) + 1) U^n,
    whose eigenvalues are exactly 2 pi k / N, k = 0..N-1.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    U = shift_unitary(N)
    H = np.pi * (1.0 - 1.0 / N) * np.eye(N, dtype=complex)
    Un = np.eye(N, dtype=complex)
    for n in range(1, N):
        Un = U @ Un
        H = H - (np.pi / N) * (1j / np.tan(np.pi * n / N) + 1.0) * Un
    return H


@dataclass(frozen=True)
class PermutationModel:
    """Bijective update map on {0..size-1}."""

    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(len(m))):
            raise NotBijective("map is not a permutation of 0..%d" % (len(m) - 1))
        object.__setattr__(self, "map", m)

    @property
    def size(self):
        return len(self.map)

    def unitary(self):
        U = np.zeros((self.size, self.size), dtype=complex)
        for i, j in enumerate(self.map):
            U[j, i] = 1.0
        return U


@dataclass(frozen=True)
class LossyAutomaton:
    """Arbitrary (possibly non-invertible) update map on {0..size-1}."""

    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if any(not 0 <= x < len(m) for x in m):
            raise ValueError("map values out of range")
        object.__setattr__(self, "map", m)

    @property
    def size(self):
        return len(self.map)


@dataclass(frozen=True)
class CompositeSpectrum:
    """Cycle decomposition with per-cycle energy offsets and the level multiset."""

    cycles: tuple  # ((length, deltaE), ...)
    members: tuple  # tuple of state tuples, aligned with cycles
    levels: tuple = field(default=())

    def level_list(self):
        return sorted(self.levels)


def decompose_cycles(model, deltaE=None):
    """Disjoint-cycle decomposition plus the composite energy spectrum.

    deltaE: optional per-cycle offsets (applied in discovery order, default 0).
    Levels are {2 pi k / L_i + dE_i : 0 <= k < L_i} over all cycles.
    """
    if not isinstance(model, PermutationModel):
        model = PermutationModel(tuple(model))
    seen = [False] * model.size
    members = []
    for start in range(model.size):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = model.map[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = model.map[x]
        members.append(tuple(cyc))
    if deltaE is None:
        deltaE = [0.0] * len(members)
    if len(deltaE) != len(members):
        raise ValueError("need one deltaE per cycle (%d cycles)" % len(members))
    cycles = tuple((len(c), float(d)) for c, d in zip(members, deltaE))
    levels = tuple(
        2.0 * np.pi * k / L + d for (L, d) in cycles for k in range(L)
    )
    return CompositeSpectrum(cycles=cycles, members=tuple(members), levels=levels)


def info_equivalence_classes(automaton, horizon=None):
    """Partition of states into information-equivalence classes.

    States x, y share a class iff f^t(x) = f^t(y) for some t <= horizon.
    On a finite set all mergers happen within `size` steps, the default
    horizon. The induced map on classes is checked to be a bijection.
    """
    if not isinstance(automaton, LossyAutomaton):
        automaton = LossyAutomaton(tuple(automaton))
    n = automaton.size
    if horizon is None:
        horizon = n
    if horizon < n:
        raise ValueError("horizon must be >= size for all mergers to resolve")
    image = list(range(n))
    for _ in range(horizon):
        image = [automaton.map[x] for x in image]
    reps = {}
    classes = []
    for x in range(n):
        key = image[x]
        if key not in reps:
            reps[key] = len(classes)
            classes.append([])
        classes[reps[key]].append(x)
    # induced map on classes must be a bijection
    cls_of = {x: i for i, c in enumerate(classes) for x in c}
    induced = [cls_of[automaton.map[c[0]]] for c in classes]
    for c in classes:
        if any(cls_of[automaton.map[x]] != induced[cls_of[c[0]]] for x in c):
            raise NotBijective("class map is not well defined")
    if sorted(induced) != list(range(len(classes))):
        raise NotBijective("induced class map is not a bijection")
    return [tuple(c) for c in classes]


def all_to_one_matrix(N):
    """Matrix D of the total-information-loss block: D[0, j] = 1 for all j."""
    D = np.zeros((N, N), dtype=complex)
    D[0, :] = 1.0
    return D


def time_reverse_conjugator(block):
    """Unitary Y with Y_{kl} = exp(2 pi i k l / N)/sqrt(N) satisfying D†Y = YD.

    Accepts the all-to-one LossyAutomaton (every state maps to one fixed
    state) or its matrix; anything else raises UnsupportedShape. Also checks
    D D† = N |0><0| and D† D = N |e><e| with |e> the uniform state.
    """
    if isinstance(block, LossyAutomaton):
        targets = set(block.map)
        if len(targets) != 1:
            raise UnsupportedShape("automaton is not all-to-one")
        N = block.size
        D = all_to_one_matrix(N)
    else:
        D = np.asarray(block, dtype=complex)
        N = D.shape[0]
        if not np.array_equal(D, all_to_one_matrix(N)):
            raise UnsupportedShape("matrix is not the all-to-one block")
    k = np.arange(N)
    Y = np.exp(2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)
    if np.max(np.abs(D.conj().T @ Y - Y @ D)) > 1e-12 * N:
        raise UnsupportedShape("conjugation identity failed")
    e = np.ones(N) / np.sqrt(N)
    assert np.max(np.abs(D @ D.conj().T - N * np.outer(np.eye(N)[0], np.eye(N)[0]))) < 1e-12 * N
    assert np.max(np.abs(D.conj().T @ D - N * np.outer(e, e))) < 1e-12 * N
    return Y
