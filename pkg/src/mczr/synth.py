"""Exact gate-count-optimal synthesis of diagonal unitaries into MCZR gates.

Every diagonal unitary on ``n`` qubits has exactly one MCZR realisation (up to
global phase): the angle on qubit set ``v`` is the signed subset sum

    theta_v = sum_{x subset of v} (-1)**(|v| - |x|) * alpha_x

so the gate count is the number of non-identity angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    EPS_ZERO,
    MAX_DENSE_QUBITS,
    TWO_PI,
    DenseCoefficients,
    GateMask,
    GateSeq,
    Layering,
    MczrGate,
    PhasePolynomial,
    PhaseVector,
)

MAX_NAIVE_QUBITS = 16
MAX_MATRIX_QUBITS = 6


def _wrap(theta: np.ndarray) -> np.ndarray:
    theta = np.mod(theta, TWO_PI)
    theta[theta >= TWO_PI] = 0.0
    return theta


@lru_cache(maxsize=4)
def _subset_pairs(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All ``(v, x)`` with ``x`` a subset of ``v`` and the sign ``(-1)**|v ^ x|``."""
    v = np.zeros(1, dtype=np.int64)
    x = np.zeros(1, dtype=np.int64)
    sign = np.ones(1, dtype=np.int8)
    for b in range(n):
        bit = 1 << b
        v = np.concatenate([v, v | bit, v | bit])
        x = np.concatenate([x, x, x | bit])
        sign = np.concatenate([sign, -sign, sign])
    for arr in (v, x, sign):
        arr.setflags(write=False)
    return v, x, sign


def solve_angles_naive(alpha: PhaseVector) -> PhasePolynomial:
    """Term-by-term evaluation of the signed subset sums, O(3**n) work.

    The result keeps every mask, zero angles included; the zero mask carries
    the global phase ``alpha_0``.
    """
    n = alpha.n
    if n > MAX_NAIVE_QUBITS:
        raise ValueError(f"naive solve is limited to n <= {MAX_NAIVE_QUBITS}, got {n}")
    v, x, sign = _subset_pairs(n)
    a = alpha.total_phases()
    theta = np.bincount(v, weights=sign * a[x], minlength=1 << n)
    return PhasePolynomial(n, DenseCoefficients(_wrap(theta)))


def mobius_transform(values: np.ndarray) -> np.ndarray:
    """In-place-style signed subset-sum transform on a copy of ``values``.

    For each bit ``b``, every entry with bit ``b`` set has the entry without
    it subtracted: n * 2**(n-1) subtractions in total.
    """
    out = np.array(values, dtype=np.float64)
    n = out.shape[0].bit_length() - 1
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        view[:, 1, :] -= view[:, 0, :]
    return out


def solve_angles_fast(alpha: PhaseVector) -> PhasePolynomial:
    """Same angles as :func:`solve_angles_naive` in O(n * 2**n)."""
    if alpha.n > MAX_DENSE_QUBITS:
        raise ValueError(f"fast solve is limited to n <= {MAX_DENSE_QUBITS}, got {alpha.n}")
    theta = mobius_transform(alpha.total_phases())
    return PhasePolynomial(alpha.n, DenseCoefficients(_wrap(theta)))


@dataclass(frozen=True, eq=False)
class SolveMatrices:
    """Integer coefficient matrix ``J`` of the linear system and its inverse ``K``.

    ``J[x, v] = 1`` iff ``v`` is a subset of ``x``;
    ``K[v, x] = (-1)**(|v| + |x|)`` iff ``x`` is a subset of ``v``.
    """

    J: np.ndarray
    K: np.ndarray


def build_solve_matrices(n: int) -> SolveMatrices:
    if not 1 <= n <= MAX_MATRIX_QUBITS:
        raise ValueError(f"solve matrices are built for 1 <= n <= {MAX_MATRIX_QUBITS}, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    # subset[r, c]: c is a subset of r
    subset = (idx[:, None] & idx[None, :]) == idx[None, :]
    weight = np.array([int(i).bit_count() for i in idx], dtype=np.int64)
    parity = 1 - 2 * ((weight[:, None] + weight[None, :]) % 2)
    J = subset.astype(np.int64)
    K = np.where(subset, parity, 0).astype(np.int64)
    return SolveMatrices(J, K)


def optimal_gate_count(poly: PhasePolynomial, eps: float = EPS_ZERO) -> int:
    masks, _ = poly.nonzero_terms(eps)
    return len(masks)


def pairwise_layout(poly: PhasePolynomial, eps: float = EPS_ZERO) -> Layering:
    """Lay the non-identity gates out in complementary pairs.

    Layer ``k`` holds the gates on ``k`` and its complement for
    ``k = 1 .. 2**(n-1) - 1``, followed by the all-qubit gate; layers whose
    two angles both vanish are skipped.
    """
    n = poly.n
    full = (1 << n) - 1
    last = 1 << (n - 1)
    groups: dict[int, list[MczrGate]] = {}
    masks, thetas = poly.nonzero_terms(eps)
    for m, t in zip(masks.tolist(), thetas.tolist()):
        key = last if m == full else min(m, full ^ m)
        groups.setdefault(key, []).append(MczrGate(GateMask(m, n), t))
    return Layering(n, tuple(tuple(groups[k]) for k in sorted(groups)))


def synthesize(alpha: PhaseVector, fast: bool = True) -> GateSeq:
    """Gate-count-optimal circuit for ``alpha`` in pairwise-layout order."""
    poly = solve_angles_fast(alpha) if fast else solve_angles_naive(alpha)
    return pairwise_layout(poly).flatten()
