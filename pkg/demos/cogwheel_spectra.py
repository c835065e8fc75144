"""From a deterministic N-state cycle to a quantum Hamiltonian and back.

A cogwheel hopping n -> n+1 mod N every tick is described exactly by a
hermitean H whose levels are 2 pi k / N: exp(-iH) IS the hop. Composite
automata (several disjoint cycles) just overlay the cycle spectra, shifted
by arbitrary per-cycle offsets.
"""

import numpy as np
import scipy.linalg

from ontolab import cogwheel

N = 5
H = cogwheel.hamiltonian_matrix(N)
U = scipy.linalg.expm(-1j * H)
print(f"N = {N}: max |exp(-iH) - one-step permutation| =",
      f"{np.max(np.abs(U - cogwheel.shift_unitary(N))):.2e}")
print("levels:", np.round(np.sort(np.linalg.eigvalsh(H)), 6))
print("2pi k/N:", np.round(2 * np.pi * np.arange(N) / N, 6))

# a 7-state automaton made of a 3-cycle and a 4-cycle
model = cogwheel.PermutationModel((1, 2, 0, 4, 5, 6, 3))
spec = cogwheel.decompose_cycles(model, deltaE=[0.0, 0.25])
print("\ncycles (length, offset):", spec.cycles)
print("composite levels:", np.round(spec.level_list(), 4))

# information loss: when several states merge under the update, only the
# equivalence classes evolve bijectively
lossy = cogwheel.LossyAutomaton((1, 0, 1, 1, 0, 0))
print("\nlossy map 0<->1 with feeders:",
      cogwheel.info_equivalence_classes(lossy))
