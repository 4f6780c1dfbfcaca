"""End-to-end workflows and the two benchmark families.

* Workflow 1: synthesize a diagonal unitary, keep the complementary pairs as
  one layer each and optimise the remaining gates iteratively.
* Workflow 2: the same split applied to an arbitrary gate sequence.
* Diagonal Hermitian operators (entries +-1) and QAOA phase-separation
  circuits on random 3-regular graphs as instance generators.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from collections.abc import Iterable, Iterator
from dataclasses import astuple, dataclass, field, fields
from pathlib import Path

import numpy as np

from .core import MAX_DENSE_QUBITS, GateSeq, Layering, MczrGate, PhaseVector
from .layering import (
    OptReport,
    asap_layering,
    depth_lower_bound,
    extract_complementary_pairs,
    iterative_depth_opt,
    merge_layerings,
)
from .synth import pairwise_layout, solve_angles_fast, solve_angles_naive

MAX_ENUMERATION_QUBITS = 4
HERMITIAN_STRATEGIES = {"app01": None, "app02": 1, "app03": 5, "app04": 20}
CSV_COLUMNS = (
    "n",
    "instance_id",
    "strategy",
    "depth_before",
    "depth_after",
    "gate_count",
    "lower_bound",
    "wall_time",
    "rng_seed",
)


def _split_and_optimize(seq: GateSeq, iter: int) -> OptReport:
    pairs, rest = extract_complementary_pairs(seq)
    rep = iterative_depth_opt(rest, iter)
    d1 = pairs.depth
    return OptReport(
        layering=merge_layerings(pairs, rep.layering),
        depth=d1 + rep.depth,
        lower_bound=depth_lower_bound(seq),
        iterations_run=rep.iterations_run,
        per_iteration_depths=[d1 + d for d in rep.per_iteration_depths],
    )


def workflow1(
    alpha: PhaseVector, iter: int = 1, fast: bool = True
) -> tuple[Layering, OptReport]:
    """Synthesize ``alpha`` and optimise the depth of the result."""
    poly = solve_angles_fast(alpha) if fast else solve_angles_naive(alpha)
    seq = pairwise_layout(poly).flatten()
    report = _split_and_optimize(seq, iter)
    return report.layering, report


def workflow2(seq: GateSeq, iter: int = 1) -> OptReport:
    """Pair up complementary gates, then run the iterative optimiser on the rest."""
    return _split_and_optimize(seq, iter)


# -- diagonal Hermitian operators ---------------------------------------------


def _hermitian_from_bits(n: int, bits: np.ndarray) -> PhaseVector:
    alpha = np.zeros(1 << n)
    alpha[1:] = np.where(bits, np.pi, 0.0)
    return PhaseVector(n, alpha)


def enumerate_hermitian_diagonals(n: int) -> Iterator[PhaseVector]:
    """Every diagonal with entries +-1 and a leading +1.

    Fixing the first entry identifies ``D`` with ``-D``, leaving
    ``2**(2**n - 1)`` operators.
    """
    if not 1 <= n <= MAX_ENUMERATION_QUBITS:
        raise ValueError(f"full enumeration is limited to 1 <= n <= {MAX_ENUMERATION_QUBITS}")
    free = (1 << n) - 1
    shifts = np.arange(free)
    for k in range(1 << free):
        yield _hermitian_from_bits(n, (k >> shifts) & 1)


def random_hermitian_diagonal(n: int, seed: int) -> PhaseVector:
    if not 1 <= n <= MAX_DENSE_QUBITS:
        raise ValueError(f"n must be in [1, {MAX_DENSE_QUBITS}], got {n}")
    rng = np.random.default_rng(seed)
    return _hermitian_from_bits(n, rng.integers(0, 2, size=(1 << n) - 1))


# -- QAOA on 3-regular graphs --------------------------------------------------


@dataclass(frozen=True)
class RegularGraph:
    """Simple 3-regular graph on vertices ``1..n``; edges are ``(u, v)`` with ``u < v``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 4 or self.n % 2:
            raise ValueError(f"a 3-regular graph needs an even vertex count >= 4, got {self.n}")
        edges = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        if len(edges) != 3 * self.n // 2:
            raise ValueError(f"expected {3 * self.n // 2} edges, got {len(edges)}")
        if len(set(edges)) != len(edges):
            raise ValueError("graph has repeated edges")
        degree = [0] * (self.n + 1)
        for u, v in edges:
            if u == v or not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"invalid edge ({u}, {v})")
            degree[u] += 1
            degree[v] += 1
        if any(d != 3 for d in degree[1:]):
            raise ValueError("not every vertex has degree 3")
        object.__setattr__(self, "edges", edges)


def random_3regular_graph(n: int, seed: int, max_attempts: int = 10_000) -> RegularGraph:
    """Pairing-model sample; any attempt with a loop or double edge is thrown
    away whole and retried with the next sub-seed.

    Edges are returned in canonical (sorted) order.
    """
    if n < 4 or n % 2:
        raise ValueError(f"a 3-regular graph needs an even vertex count >= 4, got {n}")
    stubs = np.repeat(np.arange(1, n + 1), 3)
    for attempt in range(max_attempts):
        rng = np.random.default_rng([seed, attempt])
        perm = rng.permutation(stubs).reshape(-1, 2)
        u = perm.min(axis=1)
        v = perm.max(axis=1)
        if np.any(u == v):
            continue
        edges = list(zip(u.tolist(), v.tolist()))
        if len(set(edges)) != len(edges):
            continue
        return RegularGraph(n, tuple(sorted(edges)))
    raise RuntimeError(f"no simple graph after {max_attempts} attempts")


def qaoa_phase_separation(graph: RegularGraph, gamma: float = 1.0) -> GateSeq:
    """One two-qubit rotation per edge, in edge-list order."""
    n = graph.n
    return GateSeq(n, tuple(MczrGate.on(e, gamma, n) for e in graph.edges))


# -- experiment runner --------------------------------------------------------


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    instance_id: int
    strategy: str
    depth_before: int
    depth_after: int
    gate_count: int
    lower_bound: int
    wall_time: float
    rng_seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep description.

    ``instances=None`` asks for full enumeration (Hermitian family, n <= 4).
    QAOA strategies are given as ``iters``; Hermitian ones by tag.
    """

    family: str
    sizes: tuple[int, ...] = ()
    instances: int | None = 100
    iters: tuple[int, ...] = (1, 2, 3, 4, 5)
    strategies: tuple[str, ...] = tuple(HERMITIAN_STRATEGIES)
    seed: int | None = None
    gamma: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "iters", tuple(int(t) for t in self.iters))
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if self.seed is None:
            object.__setattr__(self, "seed", int(os.environ.get("MCZR_SEED", "0")))
        if self.family not in ("hermitian", "qaoa"):
            raise ValueError(f"unknown experiment family {self.family!r}")
        if self.instances is not None and self.instances < 0:
            raise ValueError("instance count must be non-negative")
        if any(t < 1 for t in self.iters):
            raise ValueError("iteration counts must be >= 1")
        if self.family == "hermitian":
            bad = [s for s in self.strategies if s not in HERMITIAN_STRATEGIES]
            if bad:
                raise ValueError(f"unknown Hermitian strategies {bad}")
            for n in self.sizes:
                if not 1 <= n <= MAX_DENSE_QUBITS:
                    raise ValueError(f"Hermitian size {n} outside [1, {MAX_DENSE_QUBITS}]")
                if self.instances is None and n > MAX_ENUMERATION_QUBITS:
                    raise ValueError(f"cannot enumerate all operators for n={n}")
        else:
            if self.instances is None:
                raise ValueError("QAOA sweeps need an explicit instance count")
            for n in self.sizes:
                if n < 4 or n % 2 or n > 64:
                    raise ValueError(f"QAOA size {n} must be even and in [4, 64]")
            if not math.isfinite(self.gamma):
                raise ValueError("gamma must be finite")


def instance_seed(seed: int, n: int, instance_id: int) -> int:
    return int(np.random.SeedSequence([seed, n, instance_id]).generate_state(1)[0])


def _hermitian_instances(config: ExperimentConfig, n: int) -> Iterable[tuple[int, int, PhaseVector]]:
    if config.instances is None:
        for i, alpha in enumerate(enumerate_hermitian_diagonals(n)):
            yield i, config.seed, alpha
    else:
        for i in range(config.instances):
            s = instance_seed(config.seed, n, i)
            yield i, s, random_hermitian_diagonal(n, s)


def _run_hermitian(config: ExperimentConfig) -> list[ExperimentRecord]:
    records = []
    for n in config.sizes:
        for i, s, alpha in _hermitian_instances(config, n):
            layout = pairwise_layout(solve_angles_fast(alpha))
            seq = layout.flatten()
            baseline = layout.depth
            lb = depth_lower_bound(seq)
            for tag in config.strategies:
                it = HERMITIAN_STRATEGIES[tag]
                t0 = time.perf_counter()
                if it is None:
                    depth = pairwise_layout(solve_angles_fast(alpha)).depth
                else:
                    depth = workflow1(alpha, it)[1].depth
                dt = time.perf_counter() - t0
                records.append(
                    ExperimentRecord(n, i, tag, baseline, depth, len(seq), lb, dt, s)
                )
    return records


def _run_qaoa(config: ExperimentConfig) -> list[ExperimentRecord]:
    records = []
    for n in config.sizes:
        for i in range(config.instances):
            s = instance_seed(config.seed, n, i)
            seq = qaoa_phase_separation(random_3regular_graph(n, s), config.gamma)
            before = asap_layering(seq).depth
            for it in config.iters:
                t0 = time.perf_counter()
                rep = workflow2(seq, it)
                dt = time.perf_counter() - t0
                records.append(
                    ExperimentRecord(
                        n, i, f"iter{it}", before, rep.depth, len(seq), rep.lower_bound, dt, s
                    )
                )
    return records


def run_experiment_suite(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Run every instance of the sweep; records are deterministic apart from
    ``wall_time``."""
    if config.family == "hermitian":
        return _run_hermitian(config)
    return _run_qaoa(config)


@dataclass(frozen=True)
class Summary:
    n: int
    strategy: str
    count: int
    mean_depth_before: float
    mean_depth_after: float
    mean_reduction_pct: float
    mean_wall_time: float
    per_instance: list[ExperimentRecord] = field(default_factory=list, repr=False)


def aggregate(records: Iterable[ExperimentRecord]) -> list[Summary]:
    """Mean depth, depth reduction and time per ``(n, strategy)``, in first-seen order."""
    groups: dict[tuple[int, str], list[ExperimentRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.strategy), []).append(r)
    out = []
    for (n, tag), rs in groups.items():
        before = np.array([r.depth_before for r in rs], dtype=float)
        after = np.array([r.depth_after for r in rs], dtype=float)
        reduction = np.where(before > 0, 100.0 * (before - after) / np.maximum(before, 1), 0.0)
        out.append(
            Summary(
                n,
                tag,
                len(rs),
                float(before.mean()),
                float(after.mean()),
                float(reduction.mean()),
                float(np.mean([r.wall_time for r in rs])),
                rs,
            )
        )
    return out


def records_to_csv(records: Iterable[ExperimentRecord], include_time: bool = True) -> str:
    buf = io.StringIO()
    columns = [c for c in CSV_COLUMNS if include_time or c != "wall_time"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    names = [f.name for f in fields(ExperimentRecord)]
    for r in records:
        row = dict(zip(names, astuple(r)))
        row["wall_time"] = f"{r.wall_time:.6f}"
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


def write_records_csv(records: Iterable[ExperimentRecord], path: str | os.PathLike) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")
