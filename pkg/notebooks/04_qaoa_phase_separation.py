# %% [markdown]
# # QAOA phase separation on random 3-regular graphs
#
# One two-qubit rotation per edge. Every vertex has three edges, so the depth
# can never go below 3.

# %%
from mczr import (
    ExperimentConfig,
    aggregate,
    asap_layering,
    iterative_depth_opt,
    qaoa_phase_separation,
    random_3regular_graph,
    run_experiment_suite,
)

graph = random_3regular_graph(12, seed=3)
seq = qaoa_phase_separation(graph, gamma=0.4)
print(graph.edges)
print("as written:", asap_layering(seq).depth, "optimised:", iterative_depth_opt(seq, 5).depth)

# %%
cfg = ExperimentConfig("qaoa", sizes=(6, 10, 20, 30, 40, 50), instances=100, iters=(1, 5), seed=7)
for s in aggregate(run_experiment_suite(cfg)):
    print(
        f"n={s.n:<3d} {s.strategy} depth {s.mean_depth_before:5.2f} -> {s.mean_depth_after:4.2f} "
        f"({s.mean_reduction_pct:5.2f}%)"
    )
