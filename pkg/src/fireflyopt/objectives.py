"""Benchmark objective functions with domains, known optima and accuracy targets.

All objectives are pure and safe for unrestricted concurrent evaluation.
Out-of-domain inputs are rejected (the optimizer clamps before evaluating, so
a rejection signals a harness bug rather than a wandering firefly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from fireflyopt.core import SearchDomain


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    """An evaluable benchmark with everything needed to judge a run."""

    name: str
    d: int
    domain: SearchDomain
    sense: str  # "minimize" | "maximize"
    evaluate: Callable[[np.ndarray], float]
    known_optima: np.ndarray  # shape (k, d)
    optimum_value: float
    target_accuracy: float


def _check_domain(x: np.ndarray, lo: float, hi: float, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x < lo) or np.any(x > hi):
        raise ValueError(f"{name}: input outside [{lo}, {hi}]^d")
    return x


def dejong(x) -> float:
    """Sphere function, sum of squares. Minimum 0 at the origin."""
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def yang_forest(x) -> float:
    """(sum |x_i|) * exp(-sum sin(x_i^2)) on [-2pi, 2pi]^d. Minimum 0 at the origin."""
    x = _check_domain(x, -2.0 * math.pi, 2.0 * math.pi, "yang_forest")
    return float(np.sum(np.abs(x)) * np.exp(-np.sum(np.sin(x * x))))


def four_peak(x) -> float:
    """(sum |x_i|) * exp(-sum x_i^2) on [-10, 10]^d, to be maximized.

    For d=2 the four equal maxima 1/sqrt(e) sit at (+-1/2, +-1/2).
    """
    x = _check_domain(x, -10.0, 10.0, "four_peak")
    return float(np.sum(np.abs(x)) * np.exp(-np.sum(x * x)))


def standing_wave(x, beta: float = 15.0) -> float:
    """Multimodal standing-wave benchmark on [-20, 20]^d.

    1 + {exp[-sum (x_i/beta)^10] - 2 exp[-sum (x_i - pi)^2]} * prod cos^2 x_i,
    with global minimum ~0 at (pi, ..., pi).
    """
    x = _check_domain(x, -20.0, 20.0, "standing_wave")
    envelope = math.exp(-float(np.sum((x / beta) ** 10)))
    well = math.exp(-float(np.sum((x - math.pi) ** 2)))
    ripple = float(np.prod(np.cos(x) ** 2))
    return 1.0 + (envelope - 2.0 * well) * ripple


def make_dejong(d: int) -> ObjectiveSpec:
    if d < 1:
        raise ValueError("dejong requires d >= 1")
    return ObjectiveSpec(
        name="dejong",
        d=d,
        domain=SearchDomain.cube(-5.12, 5.12, d),
        sense="minimize",
        evaluate=dejong,
        known_optima=np.zeros((1, d)),
        optimum_value=0.0,
        target_accuracy=1e-5,
    )


def make_yang_forest(d: int) -> ObjectiveSpec:
    if d < 1:
        raise ValueError("yang_forest requires d >= 1")
    return ObjectiveSpec(
        name="yang_forest",
        d=d,
        domain=SearchDomain.cube(-2.0 * math.pi, 2.0 * math.pi, d),
        sense="minimize",
        evaluate=yang_forest,
        known_optima=np.zeros((1, d)),
        optimum_value=0.0,
        target_accuracy=1e-5,
    )


def make_four_peak(d: int = 2) -> ObjectiveSpec:
    # Known optima are enumerated for the 2-D case only.
    if d != 2:
        raise ValueError("four_peak is fixed at d=2")
    optima = 0.5 * np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=float)
    return ObjectiveSpec(
        name="four_peak",
        d=2,
        domain=SearchDomain.cube(-10.0, 10.0, 2),
        sense="maximize",
        evaluate=four_peak,
        known_optima=optima,
        optimum_value=1.0 / math.sqrt(math.e),
        target_accuracy=1e-5,
    )


def make_standing_wave(d: int) -> ObjectiveSpec:
    # The analytic minimum sits a hair below 0 slightly off (pi, ..., pi);
    # 0 at (pi, ..., pi) is adopted within the 1e-5 target.
    if d < 1:
        raise ValueError("standing_wave requires d >= 1")
    return ObjectiveSpec(
        name="standing_wave",
        d=d,
        domain=SearchDomain.cube(-20.0, 20.0, d),
        sense="minimize",
        evaluate=standing_wave,
        known_optima=np.full((1, d), math.pi),
        optimum_value=0.0,
        target_accuracy=1e-5,
    )


_BUILDERS: dict[str, Callable[[int], ObjectiveSpec]] = {
    "dejong": make_dejong,
    "yang_forest": make_yang_forest,
    "four_peak": make_four_peak,
    "standing_wave": make_standing_wave,
}

OBJECTIVE_NAMES = tuple(_BUILDERS)


def get_objective(name: str, d: int) -> ObjectiveSpec:
    """Look up a benchmark by name at dimension ``d``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown objective {name!r}; known: {OBJECTIVE_NAMES}") from None
    return builder(d)


def registry(dims: dict[str, int] | None = None) -> list[ObjectiveSpec]:
    """All benchmarks, with per-name dimensions overridable via ``dims``."""
    dims = dims or {}
    return [
        make_dejong(dims.get("dejong", 2)),
        make_yang_forest(dims.get("yang_forest", 2)),
        make_four_peak(dims.get("four_peak", 2)),
        make_standing_wave(dims.get("standing_wave", 2)),
    ]
