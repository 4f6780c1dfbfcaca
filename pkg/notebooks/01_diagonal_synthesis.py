# %% [markdown]
# # Synthesizing a diagonal unitary from MCZR gates
#
# A multiple-control Z rotation on qubit set `v` multiplies every basis state
# whose `v` bits are all 1 by `exp(i*theta_v)`. Any diagonal unitary has one and
# only one such decomposition, up to global phase.

# %%
import math

import numpy as np

from mczr import (
    GateSeq,
    MczrGate,
    PhaseVector,
    circuit_to_polynomial,
    equal_up_to_global_phase,
    optimal_gate_count,
    pairwise_layout,
    simulate_diagonal,
    solve_angles_fast,
    solve_angles_naive,
)

# %% [markdown]
# ## From a circuit to its diagonal
#
# Three gates on qubits {1}, {2,3} and {1,2,3}. Qubit 1 is the most significant
# bit, so the {1} rotation shows up on indices 4 to 7.

# %%
b, c, a = 0.7, 1.9, 2.6
circuit = GateSeq(3, (MczrGate.on([1], b, 3), MczrGate.on([2, 3], c, 3), MczrGate.on([1, 2, 3], a, 3)))
print(circuit_to_polynomial(circuit).coeffs)
print(np.round(simulate_diagonal(circuit).alpha, 4))

# %% [markdown]
# ## And back again
#
# Solving for the angles recovers exactly the three gates; every other
# coefficient is zero and therefore no gate at all.

# %%
alpha = simulate_diagonal(circuit)
poly = solve_angles_fast(alpha)
print({format(m, "03b"): round(t, 4) for m, t in poly.coeffs.items()})
print("gate count:", optimal_gate_count(poly))

# %% [markdown]
# The fast solver is a signed subset-sum transform over the bitmask lattice;
# the naive one evaluates each sum term by term. They agree.

# %%
rng = np.random.default_rng(0)
for n in (4, 8, 12):
    pv = PhaseVector(n, rng.uniform(0, 2 * math.pi, 1 << n))
    d = np.abs(solve_angles_fast(pv).coeffs.array - solve_angles_naive(pv).coeffs.array) % (2 * math.pi)
    print(n, float(np.minimum(d, 2 * math.pi - d).max()))

# %% [markdown]
# ## Pairwise layout
#
# Gates on complementary qubit sets never overlap, so the full set of
# `2**n - 1` gates packs into `2**(n-1)` layers.

# %%
pv = PhaseVector(3, rng.uniform(0, 2 * math.pi, 8))
layout = pairwise_layout(solve_angles_fast(pv))
for layer in layout:
    print([str(g.mask) for g in layer])
print("depth", layout.depth, "exact:", equal_up_to_global_phase(simulate_diagonal(layout.flatten()), pv))
