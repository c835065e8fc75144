"""Exact integer dynamics: a discrete oscillator and a boson ring.

Both systems update integers with integers, conserve an integer energy
exactly, and run backwards bit-for-bit. The discrete oscillator hops along
the lattice sites of its interpolated energy contour; on average it moves
exactly as fast as Hamilton's equations say it should.
"""

import numpy as np

from ontolab import dham, lattice2d

osc = dham.discrete_oscillator()
state = (9, 2)
E = osc.h(*state)
orbit = [state]
for _ in range(40):
    state = dham.step_pair(osc, state)
    orbit.append(state)
period = next(i for i, s in enumerate(orbit[1:], 1) if s == orbit[0])
print(f"oscillator orbit at E = {E}: period {period} steps")
print("first sites:", orbit[:8])

for level in (20, 50, 100):
    stats = dham.speed_statistics(osc, level)
    print(f"E ~ {level:3d}: lattice speed / |grad H| = {stats['ratio']:.3f} "
          f"({stats['sites']} sites, {stats['contours']} contours)")

print()
ring = lattice2d.random_state(16, seed=0)
E0 = lattice2d.classical_energy(ring)
s = ring
for _ in range(1000):
    s = lattice2d.step(s)
print("boson ring, 1000 steps: energy", lattice2d.classical_energy(s),
      "== start", E0, "->", lattice2d.classical_energy(s) == E0)
for _ in range(1000):
    s = lattice2d.step_back(s)
print("round trip bit-exact:",
      bool(np.array_equal(s.Q, ring.Q) and np.array_equal(s.Pplus, ring.Pplus)))

m = lattice2d.movers(ring)
m1 = lattice2d.movers(lattice2d.step(ring))
print("movers translate rigidly:",
      bool(np.array_equal(m1.AL, np.roll(m.AL, -1))
           and np.array_equal(m1.AR, np.roll(m.AR, 1))))
