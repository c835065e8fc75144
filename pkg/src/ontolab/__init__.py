"""Numerical laboratory for deterministic models with quantum descriptions.

Finite-dimensional unitaries and their Hamiltonians, periodic cogwheel
automata, the finite rotator, integer-lattice phase space, local hidden
variable experiments, integer field automata, sheet dynamics on momentum
rays, discrete Hamiltonian contour dynamics, exponential-splitting
expansions, and second quantisation.
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    bch,
    bell,
    cogwheel,
    dham,
    errors,
    fermi2q,
    hilbert,
    lattice2d,
    neutrino,
    pq,
    rotator,
)
