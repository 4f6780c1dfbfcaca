"""Gate-count-optimal synthesis and depth optimisation of MCZR circuits."""

from .bench import (
    ExperimentConfig,
    ExperimentRecord,
    RegularGraph,
    aggregate,
    enumerate_hermitian_diagonals,
    qaoa_phase_separation,
    random_3regular_graph,
    random_hermitian_diagonal,
    run_experiment_suite,
    workflow1,
    workflow2,
)
from .core import (
    EPS_ZERO,
    GateMask,
    GateSeq,
    Layering,
    MczrGate,
    PhasePolynomial,
    PhaseVector,
    mask_complement,
    masks_disjoint,
    normalize_angle,
    popcount_weight,
)
from .layering import (
    OptReport,
    asap_layering,
    depth_lower_bound,
    exhaustive_optimal_depth,
    extract_complementary_pairs,
    gate_exchange_optimize,
    generate_new_gateseq,
    greedy_layer_formation,
    iterative_depth_opt,
)
from .phasepoly import (
    circuit_to_polynomial,
    equal_up_to_global_phase,
    evaluate_polynomial,
    simulate_diagonal,
)
from .synth import (
    build_solve_matrices,
    optimal_gate_count,
    pairwise_layout,
    solve_angles_fast,
    solve_angles_naive,
    synthesize,
)

__version__ = "0.1.0"
