"""Experiment harness: seeded replicated trials, balance sweep, swarm
subdivision, evaluation-count benchmarks and dimension scaling vs theory.

Trials are seeded ``base_seed + index`` so any single trial can be re-run in
isolation; aggregation is a deterministic reduction in trial order.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, replace

import numpy as np

from fireflyopt import core, objectives, theory
from fireflyopt.core import FaParameters, derive_defaults

# Published evaluation counts (mean, std) for the two reference benchmarks,
# carried along purely as context columns in benchmark reports.
REFERENCE_EVALS = {
    "dejong_d256": {
        "ga": (25412.0, 1237.0),
        "pso": (17040.0, 1123.0),
        "fa_reported": (5657.0, 730.0),
    },
    "yang_forest_d16": {
        "ga": (37079.0, 8920.0),
        "pso": (19725.0, 3204.0),
        "fa_reported": (5152.0, 2493.0),
    },
}


@dataclass
class TrialRecord:
    seed: int
    success: bool
    evals_used: int
    iterations_used: int
    best_value: float


@dataclass
class ExperimentSummary:
    """Aggregate over one trial set.

    Evaluation statistics cover successful trials only (budget-exhausted
    trials count as failures); they are ``None`` when nothing succeeded.
    """

    n_trials: int
    success_rate: float
    mean_evals: float | None
    std_evals: float | None
    median_best: float


@dataclass(frozen=True)
class ModeSchedule:
    """Per-iteration exploit/explore tags with their requested count ratio."""

    tags: tuple[str, ...]
    q: float


def build_mode_schedule(q: float, t_max: int) -> ModeSchedule:
    """Deterministic, maximally interleaved tag sequence.

    Exploit and explore counts are in ratio ``q`` up to integer rounding and
    the k exploit tags are spread evenly across the t_max slots.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    k = round(q * t_max / (1.0 + q))
    k = min(max(k, 0), t_max)
    tags = []
    acc = 0
    for i in range(t_max):
        nxt = (i + 1) * k // t_max
        tags.append("exploit" if nxt > acc else "explore")
        acc = nxt
    return ModeSchedule(tags=tuple(tags), q=q)


def summarize(records: list[TrialRecord]) -> ExperimentSummary:
    succ = [r for r in records if r.success]
    if succ:
        evals = [r.evals_used for r in succ]
        mean_evals = float(np.mean(evals))
        std_evals = float(np.std(evals))
    else:
        mean_evals = None
        std_evals = None
    return ExperimentSummary(
        n_trials=len(records),
        success_rate=len(succ) / len(records),
        mean_evals=mean_evals,
        std_evals=std_evals,
        median_best=float(statistics.median(r.best_value for r in records)),
    )


def run_trials(
    objective,
    params: FaParameters,
    n_trials: int,
    base_seed: int,
    stop_on_accuracy: bool = True,
    target_accuracy: float | None = None,
) -> tuple[ExperimentSummary, list[TrialRecord]]:
    """Independent seeded runs ``base_seed .. base_seed + n_trials - 1``."""
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    if target_accuracy is None:
        target_accuracy = objective.target_accuracy
    records = []
    for k in range(n_trials):
        trial_params = replace(params, seed=base_seed + k)
        try:
            result = core.run(
                objective,
                trial_params,
                stop_on_accuracy=stop_on_accuracy,
                target_accuracy=target_accuracy,
            )
        except Exception as exc:
            raise RuntimeError(f"trial {k} (seed {base_seed + k}) failed") from exc
        success = abs(result.best_value - objective.optimum_value) <= target_accuracy
        records.append(
            TrialRecord(
                seed=base_seed + k,
                success=success,
                evals_used=result.evals_used,
                iterations_used=result.iterations_used,
                best_value=result.best_value,
            )
        )
    return summarize(records), records


# ---------------------------------------------------------------------------
# Exploitation/exploration balance sweep
# ---------------------------------------------------------------------------

@dataclass
class QSweepRow:
    q: float
    median_best: float
    mean_best: float


def q_sweep(
    q_values: list[float],
    n_trials: int = 25,
    n: int = 15,
    t_max: int = 1000,
    d: int = 2,
    base_seed: int = 0,
) -> list[QSweepRow]:
    """Solution quality of the standing-wave benchmark versus the
    exploit/explore iteration ratio.

    Every run uses the full iteration budget; quality is the best value
    reached, reported as median and mean over the trial set.
    """
    if not q_values:
        raise ValueError("q_values must be non-empty")
    objective = objectives.make_standing_wave(d)
    rows = []
    for q in q_values:
        schedule = build_mode_schedule(q, t_max)
        params = derive_defaults(
            objective.domain, n=n, t_max=t_max, mode_schedule=schedule.tags
        )
        _, records = run_trials(
            objective, params, n_trials, base_seed, stop_on_accuracy=False
        )
        best = [r.best_value for r in records]
        rows.append(
            QSweepRow(
                q=q,
                median_best=float(statistics.median(best)),
                mean_best=float(np.mean(best)),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Swarm subdivision on the four-peak landscape
# ---------------------------------------------------------------------------

@dataclass
class Cluster:
    centroid: np.ndarray
    members: list[int]


def cluster_final_positions(positions, radius: float) -> list[Cluster]:
    """Greedy order-dependent agglomeration with incremental centroids."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    clusters: list[Cluster] = []
    for idx, p in enumerate(positions):
        p = np.asarray(p, dtype=float)
        for c in clusters:
            if float(np.linalg.norm(p - c.centroid)) <= radius:
                c.members.append(idx)
                c.centroid = c.centroid + (p - c.centroid) / len(c.members)
                break
        else:
            clusters.append(Cluster(centroid=p.copy(), members=[idx]))
    return clusters


@dataclass
class SubdivisionTrial:
    seed: int
    peaks_found: int
    initial_positions: np.ndarray
    final_positions: np.ndarray
    evals_used: int


@dataclass
class SubdivisionResult:
    trials: list[SubdivisionTrial]
    peak_histogram: dict[int, int]  # peaks found -> trial count
    all_found_rate: float


def subdivision_params(n: int, t: int) -> FaParameters:
    """Scale-derived defaults for the four-peak landscape.

    With uniform initialization over the full box the swarm reliably gathers
    onto one maximum; simultaneous occupation of all four is not something
    this update rule achieves from such sparse starts (the visibility needed
    to gather scattered fireflies exceeds the peak separation, so gathering
    and subdividing are in direct tension).
    """
    return derive_defaults(objectives.make_four_peak(2).domain, n=n, t_max=t)


def subdivision_experiment(
    n: int = 25,
    t: int = 20,
    n_trials: int = 100,
    base_seed: int = 0,
    params: FaParameters | None = None,
    cluster_radius: float = 0.3,
    peak_tol: float = 0.1,
) -> SubdivisionResult:
    """How often a finite-visibility swarm splits onto all four equal maxima.

    A peak counts as found when some cluster centroid of the final positions
    lies within ``peak_tol`` of it.
    """
    objective = objectives.make_four_peak(2)
    if params is None:
        params = subdivision_params(n, t)
    else:
        params = replace(params, n=n, t_max=t)
    trials = []
    for k in range(n_trials):
        rng = core.RngStream(base_seed + k)
        trial_params = replace(params, seed=base_seed + k)
        state = core.init_state(objective, trial_params, rng)
        initial = state.positions.copy()
        for _ in range(t):
            core.step(state, trial_params, objective, rng)
        clusters = cluster_final_positions(list(state.positions), cluster_radius)
        found = 0
        for peak in objective.known_optima:
            if any(float(np.linalg.norm(c.centroid - peak)) <= peak_tol for c in clusters):
                found += 1
        trials.append(
            SubdivisionTrial(
                seed=base_seed + k,
                peaks_found=found,
                initial_positions=initial,
                final_positions=state.positions.copy(),
                evals_used=state.evals,
            )
        )
    histogram: dict[int, int] = {}
    for tr in trials:
        histogram[tr.peaks_found] = histogram.get(tr.peaks_found, 0) + 1
    all_found = sum(1 for tr in trials if tr.peaks_found == len(objective.known_optima))
    return SubdivisionResult(
        trials=trials,
        peak_histogram=dict(sorted(histogram.items())),
        all_found_rate=all_found / n_trials,
    )


# ---------------------------------------------------------------------------
# Evaluation-count benchmarks
# ---------------------------------------------------------------------------

@dataclass
class EvalsBenchmarkReport:
    objective: str
    d: int
    summary: ExperimentSummary
    records: list[TrialRecord]
    reference: dict[str, tuple[float, float]]  # published context columns


# Frozen calibrated presets for the evaluation-count benchmarks. In high
# dimension the scale-derived absorption coefficient makes every pairwise
# distance effectively opaque, so attraction is disabled (gamma=0, the
# accelerated-PSO special case); partial pulls (beta0 < 1) then act as a
# recombination average over brighter fireflies, which is what makes the
# 256-dimensional sphere tractable at all.
BENCHMARK_PRESETS = {
    "dejong": FaParameters(
        n=19,
        beta0=0.18,
        gamma=0.0,
        alpha0=0.55,
        delta=0.9905,
        t_max=1500,
        noise_kind="uniform_symmetric",
    ),
    "yang_forest": FaParameters(
        n=25,
        beta0=0.3,
        gamma=0.0,
        alpha0=0.15,
        delta=0.97,
        t_max=2000,
        noise_kind="gaussian",
    ),
}


def benchmark_params(objective, **overrides) -> FaParameters:
    """Calibrated run parameters for the evaluation-count benchmarks."""
    preset = BENCHMARK_PRESETS.get(objective.name)
    if preset is None:
        preset = derive_defaults(objective.domain, gamma=0.0, t_max=2000)
    params = replace(preset)
    if overrides:
        params = replace(params, **overrides)
    return params


def evals_benchmark(
    objective,
    params: FaParameters,
    n_trials: int,
    base_seed: int = 0,
    target_accuracy: float | None = None,
) -> EvalsBenchmarkReport:
    """Evaluations-to-accuracy statistics over successful trials."""
    summary, records = run_trials(
        objective, params, n_trials, base_seed, target_accuracy=target_accuracy
    )
    key = f"{objective.name}_d{objective.d}"
    return EvalsBenchmarkReport(
        objective=objective.name,
        d=objective.d,
        summary=summary,
        records=records,
        reference=REFERENCE_EVALS.get(key, {}),
    )


# ---------------------------------------------------------------------------
# Dimension scaling against the intermittent-search prediction
# ---------------------------------------------------------------------------

@dataclass
class DimScalingRow:
    d: int
    mean_iterations: float  # censored trials counted at their budget
    n_success: int
    n_censored: int
    theory_iterations: float
    ratio: float  # mean_iterations / theory_iterations


# Iteration budgets for the scaling experiment. These are practical compute
# caps, not expected hitting times: beyond two dimensions the narrow global
# basin of the standing wave is effectively invisible to this update rule,
# so higher-dimensional trials overwhelmingly exhaust their budget and enter
# the means censored at it.
DIM_SCALING_BUDGETS = {2: 6000, 3: 6000, 4: 7500, 5: 9000, 6: 10500, 7: 12000, 8: 13500}

# Randomness scale the cooling schedule is aimed to reach near the end of the
# budget; matches the basin width that five-decimal accuracy requires.
DIM_SCALING_FINAL_ALPHA = 5e-4


def dim_scaling_params(d: int, t_budget: int) -> FaParameters:
    """Per-dimension run parameters for the scaling experiment.

    The cooling factor is solved from the budget so the randomness scale
    anneals from alpha0 down to the five-decimal working scale by roughly
    ninety percent of the budget, leaving a settled tail. The absorption
    coefficient is the scale-derived value for the standing-wave domain.
    """
    alpha0 = 2.0
    delta = (DIM_SCALING_FINAL_ALPHA / alpha0) ** (1.0 / (0.9 * t_budget))
    return FaParameters(
        n=50,
        beta0=1.0,
        gamma=1.0 / math.sqrt(40.0),
        alpha0=alpha0,
        delta=delta,
        t_max=t_budget,
        noise_kind="gaussian",
    )


def dim_scaling(
    d_values: list[int],
    t_budget: dict[int, int] | int,
    n_trials: int,
    base_seed: int = 0,
    a: float = math.pi / 2.0,
    b: float = 20.0,
    u: float = 1.0,
) -> list[DimScalingRow]:
    """Mean iterations to five-decimal accuracy on the standing wave, per
    dimension, next to the closed-form intermittent-search prediction.

    Trials that exhaust their iteration budget are censored: they enter the
    mean at the budget value and are counted separately, never dropped.
    """
    rows = []
    for d in d_values:
        if isinstance(t_budget, dict):
            budget = t_budget.get(d, DIM_SCALING_BUDGETS.get(d))
            if budget is None:
                raise ValueError(f"no iteration budget given for d={d}")
        else:
            budget = int(t_budget)
        objective = objectives.make_standing_wave(d)
        params = dim_scaling_params(d, budget)
        _, records = run_trials(objective, params, n_trials, base_seed)
        iters = [r.iterations_used if r.success else budget for r in records]
        n_success = sum(1 for r in records if r.success)
        tm = theory.mean_search_time(d, a, b, u)
        mean_iters = float(np.mean(iters))
        rows.append(
            DimScalingRow(
                d=d,
                mean_iterations=mean_iters,
                n_success=n_success,
                n_censored=len(records) - n_success,
                theory_iterations=tm,
                ratio=mean_iters / tm,
            )
        )
    return rows
