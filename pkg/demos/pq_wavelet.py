"""The position-representation profile of one (Q, P) lattice wavelet.

The states |Q, P> labelled by integer position Q and integer momentum P form
an orthonormal basis, yet each one looks like a unit block sitting on
[Q - 1/2, Q + 1/2] with small oscillating tails. This prints the profile and
checks a couple of overlaps at modest quadrature settings (the test suite
pins them to 1e-6 with a much wider integration window).
"""

import numpy as np

from ontolab import pq

q = np.linspace(-3.0, 3.0, 61)
psi = pq.wavefunction(q, 0, 0)
print("  q      |psi(q)|")
for qi, v in zip(q[::5], np.abs(psi[::5])):
    bar = "#" * int(40 * v)
    print(f"{qi:+5.1f}   {v:6.4f}  {bar}")

norm = pq.wavelet_overlap(0, 0, 0, 0, span=150.0, step=0.02)
cross = pq.wavelet_overlap(0, 0, 2, 1, span=150.0, step=0.02)
print(f"\n<0,0|0,0> = {norm.real:.8f}   (unit norm)")
print(f"|<0,0|2,1>| = {abs(cross):.2e}   (orthogonal lattice neighbours)")
