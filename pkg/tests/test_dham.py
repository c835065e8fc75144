import numpy as np
import pytest

from ontolab import dham


def test_oscillator_energy_is_pronic_sum():
    sys = dham.discrete_oscillator()
    assert sys.h(3, -2) == 3 + 3  # 3*2/2 + (-2)(-3)/2
    assert sys.h(0, 0) == 0
    assert sys.h(1, 1) == 0


def test_step_conserves_h_exactly():
    sys = dham.discrete_oscillator()
    for start in [(5, 0), (2, 7), (-4, 3)]:
        E = sys.h(*start)
        state = start
        for _ in range(50):
            state = dham.step_pair(sys, state)
            assert sys.h(*state) == E


def test_step_reverses_bit_exactly():
    sys = dham.discrete_oscillator()
    state = (6, 1)
    forward = [state]
    for _ in range(30):
        state = dham.step_pair(sys, state)
        forward.append(state)
    for prev in reversed(forward[:-1]):
        state = dham.step_pair(sys, state, direction=-1)
        assert state == prev


def test_rest_points():
    gen = dham.GenericPairSystem(lambda Q, P: Q * Q + P * P)
    # the minimum sits alone on its level set and maps to itself
    assert dham.is_rest_point(gen, (0, 0))
    assert not dham.is_rest_point(gen, (3, 4))
    # the four E=0 oscillator sites share one small circular contour
    sys = dham.discrete_oscillator()
    cycles = dham.contour_points(sys, 0, window=4)
    assert sorted(len(c) for c in cycles) == [4]


def test_contours_partition_the_shell():
    sys = dham.discrete_oscillator()
    for E in (10, 21, 36):
        cycles = dham.contour_points(sys, E, window=32)
        sites = {(q, p) for q in range(-32, 33) for p in range(-32, 33)
                 if sys.h(q, p) == E}
        covered = {s for cyc in cycles for s in cyc}
        assert covered == sites
        # each cycle closes: stepping from the last member returns to the first
        for cyc in cycles:
            assert dham.step_pair(sys, cyc[-1]) == cyc[0]


def test_contour_length_circle_limit():
    # large-E oscillator contours approach circles of radius sqrt(2E)
    sys = dham.discrete_oscillator()
    E = 200
    length, comps = dham.contour_length(sys, E, window=64)
    assert comps >= 1
    assert length == pytest.approx(2.0 * np.pi * np.sqrt(2.0 * E), rel=0.05)


def test_gradient_norm_matches_difference():
    sys = dham.discrete_oscillator()
    # central differences of Q(Q-1)/2 + P(P-1)/2 give (Q-1/2, P-1/2)
    assert dham.gradient_norm(sys, (4, -3)) == pytest.approx(np.hypot(3.5, -3.5))


def test_generic_system_traces():
    gen = dham.GenericPairSystem(lambda Q, P: Q * Q + 2 * P * P)
    E = gen.h(3, 2)
    state = (3, 2)
    seen = set()
    for _ in range(200):
        state = dham.step_pair(gen, state)
        assert gen.h(*state) == E
        if state in seen:
            break
        seen.add(state)
    assert (3, 2) in seen or state == (3, 2)


def test_oscillator_energy_conserved_multidim():
    # P(t+1/2) = Pminus - V Q(t) pairs with the pre-step Q(t) in the energy
    T = np.array([[1, 0], [0, 1]], dtype=object)
    V = np.array([[1, 1], [1, 2]], dtype=object)
    Q = np.array([2, 1], dtype=object)
    Pm = np.array([1, -1], dtype=object)
    energies = set()
    for _ in range(200):
        Q1, P1 = dham.integer_oscillator_step(T, V, Q, Pm)
        energies.add(dham.oscillator_energy(T, V, Q, P1))
        Q, Pm = Q1, P1
    assert len(energies) == 1


def test_stability_predicate():
    I2 = np.eye(2)
    assert dham.stability_predicate(I2, I2)
    assert not dham.stability_predicate(3.0 * I2, 2.0 * I2)
    assert not dham.stability_predicate(I2, -I2)
