# %% [markdown]
# # Diagonal Hermitian operators
#
# Entries are +-1, so every angle comes out as 0 or pi. Four strategies:
# pairwise layout only (`app01`) and synthesis followed by the iterative
# optimiser with 1, 5 and 20 iterations (`app02`..`app04`).

# %%
import numpy as np

from mczr import ExperimentConfig, aggregate, run_experiment_suite, solve_angles_fast
from mczr.bench import random_hermitian_diagonal

t = solve_angles_fast(random_hermitian_diagonal(6, 1)).coeffs.array
print(sorted(set(np.round(t, 12).tolist())))

# %%
cfg = ExperimentConfig("hermitian", sizes=(2, 3), instances=None, seed=0)
for s in aggregate(run_experiment_suite(cfg)):
    print(f"n={s.n} {s.strategy} count={s.count} mean depth={s.mean_depth_after:.3f}")

# %%
cfg = ExperimentConfig("hermitian", sizes=(5, 6, 7, 8), instances=20, seed=0)
for s in aggregate(run_experiment_suite(cfg)):
    print(
        f"n={s.n} {s.strategy} depth={s.mean_depth_after:7.2f} "
        f"reduction={s.mean_reduction_pct:5.2f}% time={s.mean_wall_time * 1e3:.2f} ms"
    )
