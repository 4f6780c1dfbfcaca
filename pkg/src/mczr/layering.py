"""Depth optimisation for circuits of commuting MCZR gates.

All gates commute, so any partition of a gate set into layers of pairwise
disjoint gates is a valid circuit and depth optimisation is a layering
problem. The routines here are deterministic: ties always go to the gate that
comes first in the input order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations

from .core import GateSeq, Layering, MczrGate

MAX_EXHAUSTIVE_GATES = 9


@dataclass(frozen=True)
class OptReport:
    layering: Layering
    depth: int
    lower_bound: int
    iterations_run: int
    per_iteration_depths: list[int] = field(default_factory=list)

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layering.layers)


def depth_lower_bound(seq: GateSeq) -> int:
    """Largest number of gates touching any single qubit."""
    counts: Counter[int] = Counter()
    for g in seq.gates:
        m = g.mask.bits
        while m:
            low = m & -m
            counts[low] += 1
            m ^= low
    return max(counts.values(), default=0)


def _greedy_groups(masks: list[int], full: int) -> list[list[int]]:
    """Index groups produced by greedy layer formation on ``masks``."""
    remaining = list(range(len(masks)))
    groups = []
    while remaining:
        used = 0
        layer = []
        rest = []
        for pos, k in enumerate(remaining):
            m = masks[k]
            if m & used:
                rest.append(k)
            else:
                used |= m
                layer.append(k)
                if used == full:
                    rest.extend(remaining[pos + 1 :])
                    break
        groups.append(layer)
        remaining = rest
    return groups


def greedy_layer_formation(seq: GateSeq) -> Layering:
    """Fill layers one at a time by scanning the remaining gates left to right
    and taking every gate disjoint from those already in the layer."""
    gates = seq.gates
    groups = _greedy_groups([g.mask.bits for g in gates], (1 << seq.n) - 1)
    return Layering(seq.n, tuple(tuple(gates[k] for k in grp) for grp in groups))


def generate_new_gateseq(layering: Layering) -> GateSeq:
    """Read the layering column by column: the first gate of every layer,
    then the second gate of every layer that has one, and so on."""
    layers = layering.layers
    width = max((len(layer) for layer in layers), default=0)
    gates = [layer[c] for c in range(width) for layer in layers if c < len(layer)]
    return GateSeq(layering.n, tuple(gates))


def iterative_depth_opt(seq: GateSeq, iter: int = 1) -> OptReport:
    """Alternate greedy layer formation and column-wise regeneration.

    Iteration ``t`` regenerates its sequence from the layering of iteration
    ``t - 1``. The loop stops early when the depth meets the lower bound or
    the regenerated sequence repeats its predecessor. The shallowest layering
    seen is returned; ties go to the earliest iteration.
    """
    if iter < 1:
        raise ValueError(f"iteration count must be >= 1, got {iter}")
    lb = depth_lower_bound(seq)
    current = greedy_layer_formation(seq)
    history = [current]
    if current.depth > lb:
        prev_gates = seq.gates
        for _ in range(2, iter + 1):
            nxt = generate_new_gateseq(current)
            if nxt.gates == prev_gates:
                break
            prev_gates = nxt.gates
            current = greedy_layer_formation(nxt)
            history.append(current)
            if current.depth == lb:
                break
    depths = [r.depth for r in history]
    best = depths.index(min(depths))
    return OptReport(history[best], depths[best], lb, len(history), depths)


def _pair_key(m: int, full: int) -> int:
    return min(m, full ^ m)


def extract_complementary_pairs(seq: GateSeq) -> tuple[Layering, GateSeq]:
    """Split off every gate whose complementary gate is also present.

    Returns one layer per pair, ordered by the smaller of the two masks, and
    the unmatched gates in their original order.
    """
    full = (1 << seq.n) - 1
    by_mask: dict[int, MczrGate] = {}
    for k, g in enumerate(seq.gates):
        if g.mask.bits in by_mask:
            raise ValueError(f"gate {k} repeats qubit set {g.qubits}; merge duplicates first")
        by_mask[g.mask.bits] = g
    pairs = []
    remainder = []
    for g in seq.gates:
        m = g.mask.bits
        if (full ^ m) in by_mask:
            if m < full ^ m:
                pairs.append((m, (g, by_mask[full ^ m])))
        else:
            remainder.append(g)
    pairs.sort(key=lambda p: p[0])
    return Layering(seq.n, tuple(p for _, p in pairs)), GateSeq(seq.n, tuple(remainder))


def gate_exchange_optimize(layering: Layering) -> Layering:
    """Bring every split complementary pair into a common layer, then recompact.

    For a pair split across two layers, the heavier gate moves into the
    lighter gate's layer and the gates it displaces move into the vacated
    slot. Pair layers come first; the other gates are regrouped greedily in
    layer order, so the depth never increases.
    """
    n = layering.n
    full = (1 << n) - 1
    layers = [list(layer) for layer in layering.layers]
    where: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for g in layer:
            if g.mask.bits in where:
                raise ValueError(f"qubit set {g.qubits} appears twice; merge duplicates first")
            where[g.mask.bits] = i

    for m in sorted(where, key=lambda m: (_pair_key(m, full), m)):
        c = full ^ m
        if m > c or c not in where or where[m] == where[c]:
            continue
        light, heavy = (m, c) if (m.bit_count(), m) < (c.bit_count(), c) else (c, m)
        src, dst = where[heavy], where[light]
        heavy_gate = next(g for g in layers[src] if g.mask.bits == heavy)
        displaced = [g for g in layers[dst] if g.mask.bits != light]
        light_gate = next(g for g in layers[dst] if g.mask.bits == light)
        layers[dst] = sorted([light_gate, heavy_gate], key=lambda g: g.mask.bits)
        layers[src] = [g for g in layers[src] if g.mask.bits != heavy] + displaced
        where[heavy] = dst
        for g in displaced:
            where[g.mask.bits] = src

    pair_layers = []
    rest = []
    for layer in layers:
        if len(layer) == 2 and layer[0].mask.bits ^ layer[1].mask.bits == full:
            pair_layers.append(tuple(layer))
        else:
            rest.extend(layer)
    pair_layers.sort(key=lambda p: p[0].mask.bits)
    tail = greedy_layer_formation(GateSeq(n, tuple(rest)))
    return Layering(n, tuple(pair_layers) + tail.layers)


def exhaustive_optimal_depth(seq: GateSeq) -> tuple[int, Layering]:
    """Minimum greedy depth over every ordering of the gates.

    Every layering is the greedy result of some ordering, so this is the true
    optimum. Stops as soon as the lower bound is reached.
    """
    m = len(seq)
    if m > MAX_EXHAUSTIVE_GATES:
        raise ValueError(f"exhaustive search is limited to {MAX_EXHAUSTIVE_GATES} gates, got {m}")
    full = (1 << seq.n) - 1
    masks = seq.masks
    lb = depth_lower_bound(seq)
    best = _greedy_groups(masks, full)
    if len(best) > lb:
        for order in permutations(range(m)):
            groups = _greedy_groups([masks[k] for k in order], full)
            if len(groups) < len(best):
                best = [[order[k] for k in grp] for grp in groups]
                if len(best) == lb:
                    break
    gates = seq.gates
    return len(best), Layering(seq.n, tuple(tuple(gates[k] for k in grp) for grp in best))


def asap_layering(seq: GateSeq) -> Layering:
    """Layering of the circuit as written: each gate goes one layer after the
    latest earlier gate it shares a qubit with."""
    last: dict[int, int] = {}
    layers: list[list[MczrGate]] = []
    for g in seq.gates:
        m = g.mask.bits
        bits = []
        while m:
            low = m & -m
            bits.append(low)
            m ^= low
        level = max((last.get(b, -1) for b in bits), default=-1) + 1
        for b in bits:
            last[b] = level
        if level == len(layers):
            layers.append([])
        layers[level].append(g)
    return Layering(seq.n, tuple(tuple(layer) for layer in layers))


def serial_layering(seq: GateSeq) -> Layering:
    """One gate per layer."""
    return Layering(seq.n, tuple((g,) for g in seq.gates))


def merge_layerings(head: Layering, tail: Layering) -> Layering:
    if head.n != tail.n:
        raise ValueError("layerings on different qubit counts")
    return Layering(head.n, head.layers + tail.layers)
