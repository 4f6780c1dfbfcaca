from collections import Counter

import numpy as np
import pytest
from conftest import FIG3_LAYERS, FIG3_REGENERATED, chromatic_depth, random_seq
from hypothesis import given, settings
from hypothesis import strategies as st

from mczr.core import GateMask, GateSeq, Layering, MczrGate
from mczr.layering import (
    asap_layering,
    depth_lower_bound,
    exhaustive_optimal_depth,
    extract_complementary_pairs,
    gate_exchange_optimize,
    generate_new_gateseq,
    greedy_layer_formation,
    iterative_depth_opt,
    serial_layering,
)
from mczr.phasepoly import equal_up_to_global_phase, simulate_diagonal


def gates_of(layering):
    return Counter(g for layer in layering for g in layer)


def assert_valid(layering):
    for layer in layering:
        used = 0
        for g in layer:
            assert used & g.mask.bits == 0
            used |= g.mask.bits


def seq_of(n, masks):
    return GateSeq(n, tuple(MczrGate(GateMask(m, n), 0.1 * (k + 1)) for k, m in enumerate(masks)))


# -- lower bound ---------------------------------------------------------------


def test_lower_bound(fig3_seq):
    assert depth_lower_bound(fig3_seq) == 3
    assert depth_lower_bound(GateSeq(3)) == 0
    assert depth_lower_bound(GateSeq.from_qubit_sets(3, [(1, 2)])) == 1


# -- greedy layer formation ----------------------------------------------------


def test_greedy_fig3(fig3_seq):
    lay = greedy_layer_formation(fig3_seq)
    assert lay.qubit_sets() == FIG3_LAYERS
    assert lay.depth == 4


def test_greedy_disjoint_sequence_is_one_layer():
    seq = GateSeq.from_qubit_sets(6, [(1, 2), (3,), (4, 5, 6)])
    assert greedy_layer_formation(seq).depth == 1


def test_greedy_total_conflict():
    seq = GateSeq.from_qubit_sets(4, [(1,), (1, 2), (1, 3), (1, 2, 3, 4)])
    lay = greedy_layer_formation(seq)
    assert lay.depth == 4
    assert all(len(layer) == 1 for layer in lay)


def test_greedy_never_deeper_than_asap(rng):
    for _ in range(100):
        seq = random_seq(rng, 6, int(rng.integers(1, 30)))
        assert greedy_layer_formation(seq).depth <= asap_layering(seq).depth


def test_asap_depth_of_fig3_circuit(fig3_seq):
    assert asap_layering(fig3_seq).depth == 7


# -- sequence regeneration -----------------------------------------------------


def test_regenerate_fig3(fig3_seq):
    new = generate_new_gateseq(greedy_layer_formation(fig3_seq))
    assert new.qubit_sets() == FIG3_REGENERATED


def test_regenerate_single_layer():
    seq = GateSeq.from_qubit_sets(4, [(1,), (2,), (3, 4)])
    lay = Layering(4, (seq.gates,))
    assert generate_new_gateseq(lay).gates == seq.gates


def test_regenerate_ragged_columns():
    a, b, c, d = (MczrGate.on([q], 1.0, 4) for q in (1, 2, 3, 4))
    lay = Layering(4, ((a, b, c), (d,)))
    # column-major with skips: L1[1], L2[1], L1[2], L1[3]
    assert generate_new_gateseq(lay).gates == (a, d, b, c)


# -- iterative optimisation ----------------------------------------------------


def test_iterative_fig3(fig3_seq):
    one = iterative_depth_opt(fig3_seq, 1)
    assert one.depth == 4 and one.iterations_run == 1
    two = iterative_depth_opt(fig3_seq, 2)
    assert two.depth == 3 == two.lower_bound
    assert two.per_iteration_depths == [4, 3]
    # early stop: more iterations change nothing
    many = iterative_depth_opt(fig3_seq, 10)
    assert many.per_iteration_depths == [4, 3]
    assert many.layering.layers == two.layering.layers


def test_iterative_rejects_zero_iterations(fig3_seq):
    with pytest.raises(ValueError):
        iterative_depth_opt(fig3_seq, 0)


def test_iterative_empty():
    rep = iterative_depth_opt(GateSeq(3), 5)
    assert rep.depth == 0 and rep.lower_bound == 0


def test_report_picks_earliest_minimum(rng):
    for _ in range(50):
        seq = random_seq(rng, 8, 25)
        rep = iterative_depth_opt(seq, 6)
        assert rep.depth == min(rep.per_iteration_depths)
        assert rep.layering.depth == rep.depth
        assert rep.per_iteration_depths.index(rep.depth) == rep.per_iteration_depths.index(
            min(rep.per_iteration_depths)
        )


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), m=st.integers(0, 40))
def test_iterative_properties(seed, n, m):
    rng = np.random.default_rng(seed)
    seq = random_seq(rng, n, m)
    depths = [iterative_depth_opt(seq, it).depth for it in range(1, 7)]
    assert all(b <= a for a, b in zip(depths, depths[1:]))
    rep = iterative_depth_opt(seq, 6)
    assert_valid(rep.layering)
    assert gates_of(rep.layering) == Counter(seq.gates)
    assert depth_lower_bound(seq) <= rep.depth <= serial_layering(seq).depth
    assert equal_up_to_global_phase(simulate_diagonal(rep.layering.flatten()), simulate_diagonal(seq))


# -- complementary pairs -------------------------------------------------------


def test_extract_pairs_simple():
    pairs, rest = extract_complementary_pairs(seq_of(3, [0b001, 0b110, 0b010]))
    assert [[g.mask.bits for g in layer] for layer in pairs] == [[0b001, 0b110]]
    assert rest.masks == [0b010]


def test_extract_no_pairs():
    seq = seq_of(3, [0b001, 0b010, 0b011])
    pairs, rest = extract_complementary_pairs(seq)
    assert pairs.depth == 0
    assert rest.gates == seq.gates


def test_extract_full_set():
    pairs, rest = extract_complementary_pairs(seq_of(3, [7, 6, 5, 4, 3, 2, 1]))
    assert [[g.mask.bits for g in layer] for layer in pairs] == [[1, 6], [2, 5], [3, 4]]
    assert rest.masks == [7]


def test_extract_rejects_duplicates():
    with pytest.raises(ValueError):
        extract_complementary_pairs(seq_of(3, [1, 1]))


def test_gate_exchange_depth5_to_depth4():
    g = {m: MczrGate(GateMask(m, 3), 0.5 + m) for m in range(1, 8)}
    depth5 = Layering(3, ((g[1], g[2], g[4]), (g[3],), (g[5],), (g[6],), (g[7],)))
    out = gate_exchange_optimize(depth5)
    assert out.depth == 4
    assert [[x.mask.bits for x in layer] for layer in out] == [[1, 6], [2, 5], [3, 4], [7]]
    assert gates_of(out) == gates_of(depth5)


def test_gate_exchange_without_pairs_is_greedy_recompaction(rng):
    seq = seq_of(4, [0b0011, 0b0110, 0b0001, 0b1000, 0b0100])
    lay = serial_layering(seq)
    assert gate_exchange_optimize(lay).layers == greedy_layer_formation(seq).layers


def test_gate_exchange_random_layerings(rng):
    for _ in range(200):
        masks = rng.choice(np.arange(1, 64), size=int(rng.integers(1, 30)), replace=False)
        seq = seq_of(6, [int(m) for m in masks])
        order = rng.permutation(len(seq))
        lay = greedy_layer_formation(GateSeq(6, tuple(seq.gates[k] for k in order)))
        out = gate_exchange_optimize(lay)
        assert out.depth <= lay.depth
        assert gates_of(out) == gates_of(lay)
        assert_valid(out)
        # every complementary pair ends up sharing a layer
        d1 = extract_complementary_pairs(seq)[0].depth
        assert sum(1 for layer in out if len(layer) == 2 and layer[0].mask.bits ^ layer[1].mask.bits == 63) == d1


# -- exhaustive oracle ---------------------------------------------------------


def test_exhaustive_fig3(fig3_seq):
    depth, lay = exhaustive_optimal_depth(fig3_seq)
    assert depth == 3 == lay.depth
    assert gates_of(lay) == Counter(fig3_seq.gates)


def test_exhaustive_pairs_only():
    for n, d1 in [(3, 3), (4, 4), (5, 2)]:
        full = (1 << n) - 1
        light = [m for m in range(1, full) if m < full ^ m][:d1]
        seq = seq_of(n, [x for m in light for x in (m, full ^ m)])
        assert exhaustive_optimal_depth(seq)[0] == d1


def test_exhaustive_total_conflict():
    seq = seq_of(4, [0b1000, 0b1100, 0b1010, 0b1001, 0b1111])
    assert exhaustive_optimal_depth(seq)[0] == 5


def test_exhaustive_limit():
    with pytest.raises(ValueError):
        exhaustive_optimal_depth(seq_of(5, list(range(1, 11))))


def test_exhaustive_matches_chromatic_oracle(rng):
    for _ in range(40):
        m = int(rng.integers(1, 8))
        masks = [int(x) for x in rng.choice(np.arange(1, 32), size=m, replace=False)]
        seq = seq_of(5, masks)
        depth, lay = exhaustive_optimal_depth(seq)
        assert depth == chromatic_depth(masks)
        assert_valid(lay)
        lb = depth_lower_bound(seq)
        it = iterative_depth_opt(seq, 5).depth
        assert lb <= depth <= it <= iterative_depth_opt(seq, 1).depth <= len(seq)
