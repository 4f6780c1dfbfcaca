import math

import numpy as np
import pytest
from conftest import FIG1_ANGLES, brute_force_phases, random_seq
from hypothesis import given, settings
from hypothesis import strategies as st

from mczr.core import TWO_PI, GateSeq, MczrGate, PhasePolynomial, PhaseVector
from mczr.phasepoly import (
    circuit_to_polynomial,
    equal_up_to_global_phase,
    evaluate_polynomial,
    polynomial_to_phases,
    simulate_diagonal,
)

B, C, A = FIG1_ANGLES


def test_fig1_polynomial(fig1_seq):
    poly = circuit_to_polynomial(fig1_seq)
    assert poly.coeffs == pytest.approx({0b100: B, 0b011: C, 0b111: A})
    assert poly.degree == 3


def test_empty_and_cancelling_circuits():
    assert circuit_to_polynomial(GateSeq(3)).coeffs == {}
    seq = GateSeq(3, (MczrGate.on([1, 2], math.pi / 3, 3), MczrGate.on([1, 2], 5 * math.pi / 3, 3)))
    assert circuit_to_polynomial(seq).coeffs == {}


def test_same_mask_gates_merge():
    seq = GateSeq(2, (MczrGate.on([1], 0.5, 2), MczrGate.on([2], 1.0, 2), MczrGate.on([1], 0.25, 2)))
    assert circuit_to_polynomial(seq).coeffs == pytest.approx({0b10: 0.75, 0b01: 1.0})


def test_evaluate_fig1(fig1_seq):
    poly = circuit_to_polynomial(fig1_seq)
    assert evaluate_polynomial(poly, 7) == pytest.approx((A + B + C) % TWO_PI)
    assert evaluate_polynomial(poly, 3) == pytest.approx(C)
    assert evaluate_polynomial(poly, 0) == 0.0
    with pytest.raises(IndexError):
        evaluate_polynomial(poly, 8)


def test_evaluate_includes_global_phase():
    poly = PhasePolynomial(2, {0: 0.3, 0b01: 1.0})
    assert evaluate_polynomial(poly, 0) == pytest.approx(0.3)
    assert evaluate_polynomial(poly, 1) == pytest.approx(1.3)


def test_simulate_fig1(fig1_seq):
    alpha = simulate_diagonal(fig1_seq).alpha
    expected = [0, 0, 0, C, B, B, B, (A + B + C) % TWO_PI]
    np.testing.assert_allclose(alpha, expected, atol=1e-12)


def test_simulate_empty_is_identity():
    np.testing.assert_array_equal(simulate_diagonal(GateSeq(4)).alpha, np.zeros(16))


def test_simulate_matches_per_state_oracle(rng):
    for _ in range(20):
        seq = random_seq(rng, 4, int(rng.integers(0, 12)))
        got = simulate_diagonal(seq)
        want = PhaseVector(4, brute_force_phases(seq))
        assert equal_up_to_global_phase(got, want, 1e-12)
        assert got.alpha[0] == 0.0


def test_simulate_rejects_large_n():
    with pytest.raises(ValueError):
        simulate_diagonal(GateSeq(25))


def test_equal_up_to_global_phase():
    a = PhaseVector(2, [0.1, 0.2, 0.3, 6.2])
    assert equal_up_to_global_phase(a, a)
    shifted = PhaseVector(2, a.alpha + math.pi / 7)
    assert equal_up_to_global_phase(a, shifted)
    bumped = a.alpha.copy()
    bumped[3] += math.pi / 7
    assert not equal_up_to_global_phase(a, PhaseVector(2, bumped), tol=1e-9)
    with pytest.raises(ValueError):
        equal_up_to_global_phase(a, PhaseVector(1, [0.0, 0.0]))


def test_equal_wraps_around_two_pi():
    a = PhaseVector(1, [0.0, TWO_PI - 1e-12])
    b = PhaseVector(1, [0.0, 1e-12])
    assert equal_up_to_global_phase(a, b, 1e-9)


def test_tracked_global_phase_is_ignored():
    a = PhaseVector(1, [0.0, 1.0], global_phase=2.0)
    assert equal_up_to_global_phase(a, PhaseVector(1, [0.0, 1.0]))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), m=st.integers(0, 20))
def test_simulation_is_order_invariant(seed, n, m):
    rng = np.random.default_rng(seed)
    seq = random_seq(rng, n, m)
    shuffled = GateSeq(n, tuple(seq.gates[k] for k in rng.permutation(m)))
    assert equal_up_to_global_phase(simulate_diagonal(seq), simulate_diagonal(shuffled), 1e-10)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), m=st.integers(0, 20))
def test_pointwise_evaluation_agrees_with_simulation(seed, n, m):
    rng = np.random.default_rng(seed)
    seq = random_seq(rng, n, m)
    poly = circuit_to_polynomial(seq)
    assert poly.degree <= n
    sim = simulate_diagonal(seq)
    pointwise = PhaseVector(n, [evaluate_polynomial(poly, q) for q in range(1 << n)])
    assert equal_up_to_global_phase(sim, pointwise, 1e-10)
    assert polynomial_to_phases(poly).alpha.tolist() == sim.alpha.tolist()
