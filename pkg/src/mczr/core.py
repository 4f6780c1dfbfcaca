"""Value types for MCZR circuits and their diagonal semantics.

Bit convention: qubit ``j`` (1-indexed) lives at bit position ``n - j``, so
qubit 1 is the most significant bit and a basis state ``x_1 x_2 ... x_n``
read as a binary number is its index in the diagonal.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

#: Angles within this circular distance of 0 are identity gates.
EPS_ZERO = 1e-12

#: Largest qubit count for anything that allocates 2**n entries.
MAX_DENSE_QUBITS = 24
#: Largest qubit count for paths that only schedule gates.
MAX_SCHEDULE_QUBITS = 64


def normalize_angle(theta: float) -> float:
    """Reduce an angle to ``[0, 2*pi)``."""
    r = float(theta) % TWO_PI
    # x % 2pi can round up to exactly 2pi for tiny negative x
    if r >= TWO_PI:
        r = 0.0
    return r


def circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def is_zero_angle(theta: float, eps: float = EPS_ZERO) -> bool:
    return circular_distance(theta, 0.0) <= eps


def _check_n(n: int, limit: int = MAX_SCHEDULE_QUBITS) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= limit:
        raise ValueError(f"qubit count must be an integer in [1, {limit}], got {n!r}")


@dataclass(frozen=True, slots=True)
class GateMask:
    """Set of qubits acted on by a gate, as an ``n``-bit mask."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"mask {self.bits:#b} does not fit in {self.n} bits")

    @classmethod
    def from_qubits(cls, qubits: Iterable[int], n: int) -> GateMask:
        """Build a mask from 1-indexed qubit labels."""
        bits = 0
        for j in qubits:
            if not 1 <= j <= n:
                raise IndexError(f"qubit index {j} outside [1, {n}]")
            bits |= 1 << (n - j)
        return cls(bits, n)

    @property
    def qubits(self) -> tuple[int, ...]:
        """Sorted 1-indexed qubit labels."""
        return mask_to_qubits(self.bits, self.n)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b")


def mask_to_qubits(bits: int, n: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, n + 1) if bits >> (n - j) & 1)


def popcount_weight(mask: GateMask) -> int:
    """Number of qubits in the mask."""
    return mask.bits.bit_count()


def masks_disjoint(a: GateMask, b: GateMask) -> bool:
    if a.n != b.n:
        raise ValueError(f"masks on different qubit counts ({a.n} vs {b.n})")
    return a.bits & b.bits == 0


def mask_complement(a: GateMask) -> GateMask:
    return GateMask(a.bits ^ ((1 << a.n) - 1), a.n)


@dataclass(frozen=True, slots=True)
class MczrGate:
    """Multiple-control Z rotation: phase ``exp(i*theta)`` when every qubit in
    ``mask`` is 1. ``theta`` is stored in ``[0, 2*pi)``."""

    mask: GateMask
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @classmethod
    def on(cls, qubits: Iterable[int], theta: float, n: int) -> MczrGate:
        return cls(GateMask.from_qubits(qubits, n), theta)

    @property
    def bits(self) -> int:
        return self.mask.bits

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.mask.qubits

    @property
    def is_identity(self) -> bool:
        return is_zero_angle(self.theta)


def _check_gates(n: int, gates: Sequence[MczrGate]) -> None:
    for k, g in enumerate(gates):
        if g.mask.n != n:
            raise ValueError(f"gate {k} is defined on {g.mask.n} qubits, expected {n}")
        if g.mask.bits == 0:
            raise ValueError(f"gate {k} has an empty qubit set")


@dataclass(frozen=True)
class GateSeq:
    """Ordered gate list on ``n`` qubits."""

    n: int
    gates: tuple[MczrGate, ...] = ()

    def __post_init__(self) -> None:
        _check_n(self.n)
        object.__setattr__(self, "gates", tuple(self.gates))
        _check_gates(self.n, self.gates)

    @classmethod
    def from_qubit_sets(
        cls, n: int, qubit_sets: Iterable[Iterable[int]], theta: float = 1.0
    ) -> GateSeq:
        return cls(n, tuple(MczrGate.on(q, theta, n) for q in qubit_sets))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[MczrGate]:
        return iter(self.gates)

    def __getitem__(self, k):
        return self.gates[k]

    @property
    def masks(self) -> list[int]:
        return [g.mask.bits for g in self.gates]

    def qubit_sets(self) -> list[tuple[int, ...]]:
        return [g.qubits for g in self.gates]


@dataclass(frozen=True)
class Layering:
    """Gates grouped into layers of pairwise disjoint gates.

    Empty layers are dropped on construction, so ``depth`` is the layer count.
    """

    n: int
    layers: tuple[tuple[MczrGate, ...], ...] = ()

    def __post_init__(self) -> None:
        _check_n(self.n)
        layers = tuple(tuple(layer) for layer in self.layers if len(layer))
        for i, layer in enumerate(layers):
            _check_gates(self.n, layer)
            used = 0
            for g in layer:
                if used & g.mask.bits:
                    raise ValueError(f"layer {i} contains overlapping gates")
                used |= g.mask.bits
        object.__setattr__(self, "layers", layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def flatten(self) -> GateSeq:
        """Gates in layer order."""
        return GateSeq(self.n, tuple(g for layer in self.layers for g in layer))

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self) -> Iterator[tuple[MczrGate, ...]]:
        return iter(self.layers)

    def __getitem__(self, i):
        return self.layers[i]

    def qubit_sets(self) -> list[list[tuple[int, ...]]]:
        return [[g.qubits for g in layer] for layer in self.layers]


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Diagonal unitary ``diag(exp(i*alpha_q))`` plus a tracked global phase."""

    n: int
    alpha: np.ndarray
    global_phase: float = 0.0

    def __post_init__(self) -> None:
        _check_n(self.n, MAX_DENSE_QUBITS)
        alpha = np.array(self.alpha, dtype=np.float64)
        if alpha.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} phases for n={self.n}, got shape {alpha.shape}"
            )
        alpha.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def from_phases(cls, alpha: Sequence[float]) -> PhaseVector:
        size = len(alpha)
        n = size.bit_length() - 1
        if size < 2 or size != 1 << n:
            raise ValueError(f"phase vector length must be a power of two >= 2, got {size}")
        return cls(n, np.asarray(alpha, dtype=np.float64))

    def total_phases(self) -> np.ndarray:
        return self.alpha + self.global_phase


class DenseCoefficients(Mapping):
    """Read-only mask -> angle mapping backed by a length ``2**n`` array."""

    __slots__ = ("array",)

    def __init__(self, array: np.ndarray):
        array = np.asarray(array, dtype=np.float64)
        array.setflags(write=False)
        self.array = array

    def __getitem__(self, mask: int) -> float:
        if isinstance(mask, GateMask):
            mask = mask.bits
        if not 0 <= mask < len(self.array):
            raise KeyError(mask)
        return float(self.array[mask])

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.array)))

    def __len__(self) -> int:
        return len(self.array)


@dataclass(frozen=True, eq=False)
class PhasePolynomial:
    """Multilinear phase polynomial ``sum_v theta_v * prod_{j in v} x_j``.

    ``coeffs`` maps integer bitmasks to angles. The zero mask holds the global
    phase; absent masks have coefficient 0.
    """

    n: int
    coeffs: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not isinstance(self.coeffs, DenseCoefficients):
            top = 1 << self.n
            coeffs = {}
            for m, theta in self.coeffs.items():
                m = m.bits if isinstance(m, GateMask) else int(m)
                if not 0 <= m < top:
                    raise ValueError(f"mask {m:#b} does not fit in {self.n} bits")
                coeffs[m] = float(theta)
            object.__setattr__(self, "coeffs", coeffs)

    @property
    def global_phase(self) -> float:
        return self.coeffs.get(0, 0.0)

    @property
    def degree(self) -> int:
        masks, _ = self.nonzero_terms()
        return max((int(m).bit_count() for m in masks), default=0)

    def nonzero_terms(self, eps: float = EPS_ZERO) -> tuple[np.ndarray, np.ndarray]:
        """Masks (ascending, zero mask excluded) and angles of non-identity terms."""
        if isinstance(self.coeffs, DenseCoefficients):
            arr = self.coeffs.array
            d = np.abs(arr) % TWO_PI
            keep = np.minimum(d, TWO_PI - d) > eps
            keep[0] = False
            masks = np.flatnonzero(keep)
            return masks, arr[masks]
        items = sorted(
            (m, t) for m, t in self.coeffs.items() if m != 0 and not is_zero_angle(t, eps)
        )
        masks = np.array([m for m, _ in items], dtype=np.int64 if self.n < 63 else object)
        return masks, np.array([t for _, t in items], dtype=np.float64)

    def gates(self, eps: float = EPS_ZERO) -> list[MczrGate]:
        """Non-identity gates in increasing mask order."""
        masks, thetas = self.nonzero_terms(eps)
        n = self.n
        return [MczrGate(GateMask(int(m), n), float(t)) for m, t in zip(masks, thetas)]
