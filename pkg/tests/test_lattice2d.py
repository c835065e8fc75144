import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontolab import lattice2d


def int_state(draw_q, draw_p):
    return lattice2d.IntegerFieldState(Q=np.array(draw_q), Pplus=np.array(draw_p))


small_ints = st.lists(st.integers(-9, 9), min_size=8, max_size=8)


@given(small_ints, small_ints)
@settings(max_examples=50, deadline=None)
def test_step_back_inverts_step(q, p):
    s = int_state(q, p)
    t = lattice2d.step_back(lattice2d.step(s))
    assert np.array_equal(t.Q, s.Q) and np.array_equal(t.Pplus, s.Pplus)


@given(small_ints, small_ints)
@settings(max_examples=50, deadline=None)
def test_movers_shift_exactly(q, p):
    s = int_state(q, p)
    m0 = lattice2d.movers(s)
    m1 = lattice2d.movers(lattice2d.step(s))
    assert np.array_equal(m1.AL, np.roll(m0.AL, -1))
    assert np.array_equal(m1.AR, np.roll(m0.AR, 1))


@given(small_ints, small_ints)
@settings(max_examples=30, deadline=None)
def test_energy_exactly_conserved(q, p):
    s = int_state(q, p)
    e0 = lattice2d.classical_energy(s)
    for _ in range(7):
        s = lattice2d.step(s)
    assert lattice2d.classical_energy(s) == e0


def test_energy_momentum_form_agrees():
    s = lattice2d.random_state(32, seed=5)
    exact = float(lattice2d.classical_energy(s))
    assert lattice2d.classical_energy_momentum(s) == pytest.approx(exact, abs=1e-8)


def test_odd_ring_rejected():
    with pytest.raises(ValueError):
        lattice2d.IntegerFieldState(Q=np.zeros(5, int), Pplus=np.zeros(5, int))


def test_kernel_closed_vs_quadrature():
    # the closed forms and the hard-cutoff quadrature differ only by the
    # regulator shift (-1)^(s+1) lambda/(2 pi), up to O(lambda^2) corrections
    lam = 1e-3
    for s in range(7):
        diff = (lattice2d.quantum_kernel_closed(s, lam)
                - lattice2d.quantum_kernel_quadrature(s, lam))
        want = (-1.0) ** (s + 1) * lam / (2.0 * np.pi)
        assert abs(diff - want) < 1e-5


def test_kernel_even_branch_values():
    lam = 1e-4
    # s = 0: (1/2) log(2/lambda); s = 2 subtracts the first half-odd harmonic
    assert lattice2d.quantum_kernel(0, lam) == pytest.approx(0.5 * np.log(2.0 / lam))
    assert lattice2d.quantum_kernel(2, lam) == pytest.approx(
        0.5 * (np.log(2.0 / lam) - 2.0))


def test_dispersion_stability_classification():
    cls, val, radius = lattice2d.dispersion_stability(1, [np.pi])
    assert cls == "stable" and val == pytest.approx(4.0)
    # k = pi sits exactly on the stability edge where the mode map is
    # defective; the numerical radius can poke above 1 by sqrt(eps)
    assert radius <= 1.0 + 1e-6
    cls2, val2, radius2 = lattice2d.dispersion_stability(2, [np.pi, np.pi])
    assert cls2 == "unstable" and val2 == pytest.approx(8.0)
    assert radius2 > 1.0
    with pytest.raises(ValueError):
        lattice2d.dispersion_stability(2, [0.3])


def test_stable_modes_on_unit_circle():
    for k in np.linspace(0.1, np.pi - 0.1, 9):
        eig = np.linalg.eigvals(lattice2d.mode_matrix([k]))
        assert np.max(np.abs(np.abs(eig) - 1.0)) < 1e-9


def test_parity_automaton_reversible():
    rng = np.random.default_rng(2)
    prev = rng.choice([-1, 1], size=(8, 8))
    curr = rng.choice([-1, 1], size=(8, 8))
    c1, nxt = lattice2d.parity_ca_step(prev, curr)
    # the rule is an involution in the time direction: running it on the
    # reversed pair recovers the original past layer
    _, back = lattice2d.parity_ca_step(nxt, c1)
    assert np.array_equal(back, prev)
