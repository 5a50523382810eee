"""Firefly-swarm global optimizer with benchmark suite, search-balance theory
and a reproducible experiment harness."""

from fireflyopt.core import (
    FaParameters,
    RngStream,
    RunResult,
    SearchDomain,
    SwarmState,
    attractiveness,
    cooled_alpha,
    derive_defaults,
    init_state,
    move_firefly,
    run,
    step,
)
from fireflyopt.objectives import (
    ObjectiveSpec,
    dejong,
    four_peak,
    get_objective,
    registry,
    standing_wave,
    yang_forest,
)
from fireflyopt.theory import (
    IntermittentScenario,
    diffusion_from_step,
    exploration_fraction,
    mean_search_time,
    optimal_ratio,
    tau_a_min,
    tau_b_min,
)

__version__ = "0.1.0"

__all__ = [
    "FaParameters",
    "RngStream",
    "RunResult",
    "SearchDomain",
    "SwarmState",
    "attractiveness",
    "cooled_alpha",
    "derive_defaults",
    "init_state",
    "move_firefly",
    "run",
    "step",
    "ObjectiveSpec",
    "dejong",
    "four_peak",
    "get_objective",
    "registry",
    "standing_wave",
    "yang_forest",
    "IntermittentScenario",
    "diffusion_from_step",
    "exploration_fraction",
    "mean_search_time",
    "optimal_ratio",
    "tau_a_min",
    "tau_b_min",
    "__version__",
]
