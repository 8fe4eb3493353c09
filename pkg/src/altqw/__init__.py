"""Entanglement generation in two-dimensional alternate quantum walks.

A single walker carries three degrees of freedom: x position, y position and
a coin qubit. This package evolves the walker, computes x-y negativity and the
tripartite pi-tangle, and scans coin and initial-state parameters for maxima.
"""

__version__ = "0.1.0"

from .walk import (  # noqa: E402
    CoinParams,
    EvolutionSequence,
    HorizonExhausted,
    InitParams,
    WalkState,
    amplitude,
    build_coin,
    evolve,
    evolve_basis,
    initial_state,
    step,
    superpose,
    trajectory,
)
from .coins import NAMED_COINS, named_coin  # noqa: E402
from .density import (  # noqa: E402
    DensityMatrix,
    SpectrumResult,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    pure_density,
    reduced_density,
    schmidt_singulars,
    trace_norm,
)
from .entanglement import (  # noqa: E402
    NegativitySet,
    PiTangleResult,
    negativity_full,
    negativity_half,
    negativity_set,
    pairwise_negativity,
    pi_tangle,
    residual_pi,
    theta_average,
)
from .canonical import CanonicalState, ckw_report, gme_axiom_report, make_canonical  # noqa: E402
from .sweep import EntanglementTransformer, SweepGrid, SweepResult, find_maxima, reproduce_table, run_sweep  # noqa: E402
