"""Core firefly optimizer: attraction rule, cooling schedule, seeded runs.

Each candidate solution ("firefly") is pulled toward every strictly better
peer with a strength that decays exponentially with squared distance, plus a
random perturbation whose scale cools geometrically over iterations. The
sweep is an in-place sequential double loop: a firefly sees peers' already
updated positions within the same sweep and is re-evaluated once after its
inner loop, so one iteration costs exactly ``n`` objective evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

NOISE_KINDS = ("gaussian", "uniform_symmetric")
MODE_TAGS = ("exploit", "explore")

# Randomness scale multiplier applied on exploitation-tagged iterations.
EXPLOIT_ALPHA_FACTOR = 0.01


class ObjectiveEvaluationError(RuntimeError):
    """An objective function raised during a run."""


@dataclass(frozen=True, eq=False)
class SearchDomain:
    """Axis-aligned box of feasible positions.

    ``scale`` (the mean per-dimension width) is what parameter defaults are
    derived from.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D arrays of equal length")
        if lower.size < 1:
            raise ValueError("dimension must be at least 1")
        if not np.all(lower < upper):
            raise ValueError("each lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, lo: float, hi: float, d: int) -> "SearchDomain":
        return cls(np.full(d, float(lo)), np.full(d, float(hi)))

    @property
    def d(self) -> int:
        return self.lower.size

    @property
    def scale(self) -> float:
        """Mean per-dimension width."""
        return float(np.mean(self.upper - self.lower))

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.minimum(np.maximum(x, self.lower), self.upper)

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class FaParameters:
    """All algorithm-dependent constants for one run.

    ``mode_schedule``, when set, tags every iteration "exploit" (randomness
    scale shrunk by ``EXPLOIT_ALPHA_FACTOR``, cooling still applied) or
    "explore" (randomness pinned at ``alpha0``, no cooling).
    """

    n: int = 25
    beta0: float = 1.0
    gamma: float = 1.0
    alpha0: float = 0.01
    delta: float = 0.97
    t_max: int = 100
    eval_budget: int | None = None
    seed: int = 0
    noise_kind: str = "gaussian"
    mode_schedule: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("population size n must be at least 1")
        if self.beta0 < 0:
            raise ValueError("beta0 must be non-negative")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.alpha0 < 0:
            raise ValueError("alpha0 must be non-negative")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must lie in (0, 1]")
        if self.t_max < 0:
            raise ValueError("t_max must be non-negative")
        if self.eval_budget is not None and self.eval_budget < 0:
            raise ValueError("eval_budget must be non-negative")
        if self.noise_kind not in NOISE_KINDS:
            raise ValueError(f"noise_kind must be one of {NOISE_KINDS}")
        if self.mode_schedule is not None:
            self.mode_schedule = tuple(self.mode_schedule)
            if len(self.mode_schedule) != self.t_max:
                raise ValueError("mode_schedule length must equal t_max")
            bad = set(self.mode_schedule) - set(MODE_TAGS)
            if bad:
                raise ValueError(f"unknown mode tags: {sorted(bad)}")


class RngStream:
    """Deterministic random stream backed by numpy's PCG64 generator.

    Identical seeds yield bit-identical draw sequences on every platform.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def noise(self, d: int, kind: str = "gaussian") -> np.ndarray:
        if kind == "gaussian":
            return self._gen.standard_normal(d)
        if kind == "uniform_symmetric":
            return self._gen.uniform(-0.5, 0.5, d)
        raise ValueError(f"unknown noise kind: {kind!r}")

    def initial_positions(self, domain: SearchDomain, n: int) -> np.ndarray:
        return self._gen.uniform(domain.lower, domain.upper, size=(n, domain.d))


@dataclass
class SwarmState:
    """Mutable per-run swarm state; confined to a single run."""

    positions: np.ndarray  # shape (n, d)
    brightness: list[float]  # objective value at each position
    iteration: int
    evals: int
    best_position: np.ndarray
    best_value: float
    terminated: bool = False  # evaluation budget exhausted mid-sweep


@dataclass
class RunResult:
    best_position: np.ndarray
    best_value: float
    evals_used: int
    iterations_used: int
    trace: list[float]  # best-so-far after init and after every iteration
    reason: str  # "accuracy" | "iterations" | "evaluations"


def attractiveness(beta0: float, gamma: float, r: float) -> float:
    """Pairwise pull strength at distance ``r``: ``beta0 * exp(-gamma r^2)``."""
    if beta0 < 0 or gamma < 0 or r < 0:
        raise ValueError("beta0, gamma and r must all be non-negative")
    return beta0 * math.exp(-gamma * r * r)


def cooled_alpha(alpha0: float, delta: float, t: int) -> float:
    """Randomness scale after ``t`` iterations of geometric cooling."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    if t < 0:
        raise ValueError("t must be non-negative")
    if alpha0 < 0:
        raise ValueError("alpha0 must be non-negative")
    return alpha0 * delta**t


def derive_defaults(domain: SearchDomain, **overrides) -> FaParameters:
    """Scale-aware parameter defaults for a search domain.

    With L the mean per-dimension width: alpha0 = 0.01 L, gamma = 1/sqrt(L),
    beta0 = 1, delta = 0.97 and a population of 25. Keyword overrides replace
    any derived field.
    """
    L = domain.scale
    params = FaParameters(
        n=25,
        beta0=1.0,
        gamma=1.0 / math.sqrt(L),
        alpha0=0.01 * L,
        delta=0.97,
    )
    if overrides:
        params = replace(params, **overrides)
    return params


def move_firefly(
    x_i: np.ndarray,
    x_j: np.ndarray,
    beta0: float,
    gamma: float,
    alpha_t: float,
    noise: np.ndarray,
) -> np.ndarray:
    """One attraction move of firefly ``i`` toward a brighter firefly ``j``.

    Returns ``x_i + beta0 exp(-gamma r^2) (x_j - x_i) + alpha_t * noise`` with
    ``r`` the Euclidean distance between the two fireflies.
    """
    x_i = np.asarray(x_i, dtype=float)
    x_j = np.asarray(x_j, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if x_i.shape != x_j.shape or x_i.shape != noise.shape:
        raise ValueError("x_i, x_j and noise must share one shape")
    diff = x_j - x_i
    beta = beta0 * math.exp(-gamma * float(diff @ diff))
    return x_i + beta * diff + alpha_t * noise


def _better(a: float, b: float, sense: str) -> bool:
    """Strictly-better comparison in the objective's sense."""
    return a > b if sense == "maximize" else a < b


def schedule_alpha(params: FaParameters, t: int) -> float:
    """Randomness scale for iteration ``t``, honouring any mode schedule."""
    if params.mode_schedule is None:
        return cooled_alpha(params.alpha0, params.delta, t)
    if params.mode_schedule[t] == "explore":
        return params.alpha0
    return EXPLOIT_ALPHA_FACTOR * cooled_alpha(params.alpha0, params.delta, t)


def _evaluate(objective, x: np.ndarray) -> float:
    try:
        return float(objective.evaluate(x))
    except Exception as exc:
        raise ObjectiveEvaluationError(
            f"objective {getattr(objective, 'name', '?')!r} failed at x={x!r}"
        ) from exc


def init_state(objective, params: FaParameters, rng: RngStream) -> SwarmState:
    """Uniform random initial swarm; costs ``n`` objective evaluations."""
    positions = rng.initial_positions(objective.domain, params.n)
    brightness = [_evaluate(objective, positions[k]) for k in range(params.n)]
    best_k = 0
    for k in range(1, params.n):
        if _better(brightness[k], brightness[best_k], objective.sense):
            best_k = k
    return SwarmState(
        positions=positions,
        brightness=brightness,
        iteration=0,
        evals=params.n,
        best_position=positions[best_k].copy(),
        best_value=brightness[best_k],
    )


def step(state: SwarmState, params: FaParameters, objective, rng: RngStream) -> SwarmState:
    """One full in-place sweep over all ordered firefly pairs.

    Each firefly moves toward every strictly brighter peer in turn; one with
    no brighter peer takes a pure random-walk step. Positions are clamped to
    the domain and each firefly is re-evaluated once, after its inner loop.
    If the evaluation budget runs out mid-sweep the state is returned
    partially swept with ``terminated`` set and the iteration counter not
    advanced.
    """
    domain = objective.domain
    d = domain.d
    n = params.n
    sense = objective.sense
    alpha_t = schedule_alpha(params, state.iteration)
    beta0 = params.beta0
    gamma = params.gamma
    kind = params.noise_kind
    positions = state.positions
    brightness = state.brightness

    for i in range(n):
        if params.eval_budget is not None and state.evals >= params.eval_budget:
            state.terminated = True
            return state
        x = positions[i]
        b_i = brightness[i]
        moved = False
        for j in range(n):
            if j != i and _better(brightness[j], b_i, sense):
                x = move_firefly(x, positions[j], beta0, gamma, alpha_t, rng.noise(d, kind))
                moved = True
        if not moved:
            x = x + alpha_t * rng.noise(d, kind)
        x = domain.clamp(x)
        f = _evaluate(objective, x)
        positions[i] = x
        brightness[i] = f
        state.evals += 1
        if _better(f, state.best_value, sense):
            state.best_value = f
            state.best_position = x.copy()
    state.iteration += 1
    return state


def run(
    objective,
    params: FaParameters,
    stop_on_accuracy: bool = True,
    target_accuracy: float | None = None,
) -> RunResult:
    """Seeded deterministic run until an iteration, evaluation or accuracy stop.

    The accuracy stop fires when the best value is within ``target_accuracy``
    (defaulting to the objective's own target) of the objective's known
    optimum value.
    """
    if target_accuracy is None:
        target_accuracy = getattr(objective, "target_accuracy", None)
    optimum = getattr(objective, "optimum_value", None)
    check_accuracy = stop_on_accuracy and target_accuracy is not None and optimum is not None

    rng = RngStream(params.seed)
    state = init_state(objective, params, rng)
    trace = [state.best_value]
    reason = "iterations"
    while True:
        if check_accuracy and abs(state.best_value - optimum) <= target_accuracy:
            reason = "accuracy"
            break
        if state.iteration >= params.t_max:
            reason = "iterations"
            break
        if params.eval_budget is not None and state.evals >= params.eval_budget:
            reason = "evaluations"
            break
        step(state, params, objective, rng)
        if state.terminated:
            reason = "evaluations"
            break
        trace.append(state.best_value)
    return RunResult(
        best_position=state.best_position,
        best_value=state.best_value,
        evals_used=state.evals,
        iterations_used=state.iteration,
        trace=trace,
        reason=reason,
    )
