"""Circuit -> phase polynomial -> diagonal phases."""

from __future__ import annotations

import numpy as np

from .core import (
    MAX_DENSE_QUBITS,
    TWO_PI,
    GateSeq,
    PhasePolynomial,
    PhaseVector,
    is_zero_angle,
    normalize_angle,
)

DEFAULT_TOL = 1e-9


def circuit_to_polynomial(seq: GateSeq) -> PhasePolynomial:
    """Merge the gates of ``seq`` into a phase polynomial.

    Gates on the same qubit set add their angles mod 2*pi; terms that cancel
    to the identity are dropped.
    """
    coeffs: dict[int, float] = {}
    for g in seq.gates:
        m = g.mask.bits
        coeffs[m] = normalize_angle(coeffs.get(m, 0.0) + g.theta)
    return PhasePolynomial(seq.n, {m: t for m, t in coeffs.items() if not is_zero_angle(t)})


def evaluate_polynomial(poly: PhasePolynomial, basis_index: int) -> float:
    """Phase picked up by basis state ``basis_index``: the sum of every
    coefficient whose mask is covered by the index bits (global phase included)."""
    if not 0 <= basis_index < 1 << poly.n:
        raise IndexError(f"basis index {basis_index} outside [0, {1 << poly.n})")
    total = 0.0
    for m, theta in poly.coeffs.items():
        if m & basis_index == m:
            total += theta
    return normalize_angle(total)


def subset_sum_transform(values: np.ndarray) -> np.ndarray:
    """Zeta transform over the subset lattice: ``out[x] = sum_{v subset of x} values[v]``."""
    out = np.array(values, dtype=np.float64)
    size = out.shape[0]
    n = size.bit_length() - 1
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        view[:, 1, :] += view[:, 0, :]
    return out


def polynomial_to_phases(poly: PhasePolynomial) -> PhaseVector:
    """Evaluate ``poly`` on every basis state at once."""
    if poly.n > MAX_DENSE_QUBITS:
        raise ValueError(f"n={poly.n} exceeds the dense limit of {MAX_DENSE_QUBITS} qubits")
    dense = np.zeros(1 << poly.n)
    for m, theta in poly.coeffs.items():
        dense[m] += theta
    phases = np.mod(subset_sum_transform(dense), TWO_PI)
    phases[phases >= TWO_PI] = 0.0
    return PhaseVector(poly.n, phases)


def simulate_diagonal(seq: GateSeq) -> PhaseVector:
    """Diagonal phases implemented by an MCZR circuit (global phase 0)."""
    if seq.n > MAX_DENSE_QUBITS:
        raise ValueError(f"n={seq.n} exceeds the dense limit of {MAX_DENSE_QUBITS} qubits")
    return polynomial_to_phases(circuit_to_polynomial(seq))


def phase_deviation(a: PhaseVector, b: PhaseVector) -> float:
    """Largest per-entry circular deviation between ``a`` and ``b`` after
    aligning them on entry 0."""
    if a.n != b.n:
        raise ValueError(f"phase vectors on different qubit counts ({a.n} vs {b.n})")
    diff = a.total_phases() - b.total_phases()
    d = np.abs(diff - diff[0]) % TWO_PI
    return float(np.max(np.minimum(d, TWO_PI - d)))


def equal_up_to_global_phase(a: PhaseVector, b: PhaseVector, tol: float = DEFAULT_TOL) -> bool:
    return phase_deviation(a, b) <= tol


__all__ = [
    "circuit_to_polynomial",
    "equal_up_to_global_phase",
    "evaluate_polynomial",
    "phase_deviation",
    "polynomial_to_phases",
    "simulate_diagonal",
    "subset_sum_transform",
]
