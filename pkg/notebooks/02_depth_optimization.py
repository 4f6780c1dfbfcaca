# %% [markdown]
# # Depth optimisation of commuting gates
#
# Greedy layer formation plus column-wise regeneration, traced on a 6-qubit
# circuit of nine two-qubit rotations.

# %%
from mczr import (
    GateMask,
    GateSeq,
    Layering,
    MczrGate,
    asap_layering,
    depth_lower_bound,
    exhaustive_optimal_depth,
    gate_exchange_optimize,
    generate_new_gateseq,
    greedy_layer_formation,
    iterative_depth_opt,
)

edges = [(1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 6), (2, 5), (3, 6), (4, 6)]
seq = GateSeq.from_qubit_sets(6, edges)
print("depth as written:", asap_layering(seq).depth)
print("lower bound:", depth_lower_bound(seq))

# %%
first = greedy_layer_formation(seq)
for layer in first.qubit_sets():
    print(layer)

# %% [markdown]
# Reading the layers column by column gives a new order, and a second greedy
# pass over it reaches the lower bound.

# %%
print(generate_new_gateseq(first).qubit_sets())
report = iterative_depth_opt(seq, iter=5)
print(report.per_iteration_depths, "->", report.depth)
for layer in report.layering.qubit_sets():
    print(layer)

# %%
print("exhaustive optimum:", exhaustive_optimal_depth(seq)[0])

# %% [markdown]
# ## Gate exchange
#
# A depth-5 arrangement of all seven 3-qubit gates. Moving each complementary
# partner into its mate's layer recovers the depth-4 pairwise layout.

# %%
g = {m: MczrGate(GateMask(m, 3), 0.3 * m) for m in range(1, 8)}
depth5 = Layering(3, ((g[1], g[2], g[4]), (g[3],), (g[5],), (g[6],), (g[7],)))
better = gate_exchange_optimize(depth5)
print(depth5.depth, "->", better.depth)
for layer in better:
    print([str(x.mask) for x in layer])
