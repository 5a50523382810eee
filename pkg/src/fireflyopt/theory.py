"""Closed-form optimality results for two-phase intermittent target search.

A searcher alternates a slow diffusive detection phase (mean time tau_a,
diffusion coefficient D) with a fast non-detecting relocation phase (mean
time tau_b, speed u), looking for a target of radius ``a`` inside a region of
radius ``b``. The formulas below give the optimal phase balance, the minimum
phase times, the mean search time per dimension, and the exploitation
fraction implied for a search algorithm. They lose meaning once
``ln(b/a) <= 1/2``; such inputs raise ``TheoryDomainError`` instead of being
extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class TheoryDomainError(ValueError):
    """Inputs outside the validity region of a closed form."""


# Prefactor of the d>=3 mean-search-time scaling law O((b/u)(b/a)^(d-1)),
# pinned so d=3 reproduces the stated three-dimensional result exactly.
HIGH_DIM_PREFACTOR = 2.2


@dataclass(frozen=True)
class IntermittentScenario:
    """Inputs to the closed-form theory: target radius a inside region b."""

    a: float
    b: float
    u: float
    D: float
    d: int
    s: float | None = None  # random-walk step length, if D came from one

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise ValueError("need 0 < a < b")
        if self.u <= 0:
            raise ValueError("mean search speed u must be positive")
        if self.D <= 0:
            raise ValueError("diffusion coefficient D must be positive")
        if self.d < 1:
            raise ValueError("dimension d must be at least 1")

    @classmethod
    def from_step(cls, a: float, b: float, u: float, s: float, d: int) -> "IntermittentScenario":
        return cls(a=a, b=b, u=u, D=diffusion_from_step(s), d=d, s=s)


def diffusion_from_step(s: float) -> float:
    """Diffusion coefficient of an isotropic random walk with step length s."""
    if s < 0:
        raise ValueError("step length must be non-negative")
    return s * s / 2.0


def _log_ratio(b: float, a: float, minimum: float) -> float:
    if not 0 < a < b:
        raise TheoryDomainError("need 0 < a < b")
    lr = math.log(b / a)
    if lr <= minimum:
        raise TheoryDomainError(f"ln(b/a)={lr:.6g} must exceed {minimum}")
    return lr


def optimal_ratio(D: float, a: float, b: float) -> float:
    """Optimal tau_a / tau_b^2: (D/a^2) / [2 - 1/ln(b/a)]^2."""
    if D <= 0:
        raise TheoryDomainError("D must be positive")
    lr = _log_ratio(b, a, 0.5)
    return (D / (a * a)) / (2.0 - 1.0 / lr) ** 2


def tau_a_min(D: float, u: float, a: float, b: float) -> float:
    """Minimum detection-phase time: (D/2u^2) ln^2(b/a) / [2 ln(b/a) - 1]."""
    if D <= 0:
        raise TheoryDomainError("D must be positive")
    if u <= 0:
        raise TheoryDomainError("u must be positive")
    lr = _log_ratio(b, a, 0.5)
    return (D / (2.0 * u * u)) * lr * lr / (2.0 * lr - 1.0)


def tau_b_min(a: float, u: float, b: float) -> float:
    """Minimum relocation-phase time: (a/u) sqrt(ln(b/a) - 1/2)."""
    if u <= 0:
        raise TheoryDomainError("u must be positive")
    lr = _log_ratio(b, a, 0.5)
    return (a / u) * math.sqrt(lr - 0.5)


def mean_search_time(d: int, a: float, b: float, u: float) -> float:
    """Mean intermittent search time by dimension.

    d=1: (2b/u) sqrt(b/3a); d=2: (2b^2/au) sqrt(ln(b/a));
    d>=3: 2.2 (b/u) (b/a)^(d-1), the d=3 form extended geometrically.
    """
    if not 0 < a < b:
        raise TheoryDomainError("need 0 < a < b")
    if u <= 0:
        raise TheoryDomainError("u must be positive")
    if d < 1:
        raise TheoryDomainError("d must be at least 1")
    if d == 1:
        return (2.0 * b / u) * math.sqrt(b / (3.0 * a))
    if d == 2:
        lr = _log_ratio(b, a, 0.0)
        return (2.0 * b * b / (a * u)) * math.sqrt(lr)
    return HIGH_DIM_PREFACTOR * (b / u) * (b / a) ** (d - 1)


def exploration_fraction(R: float, a: float) -> float:
    """Exploitation fraction of effort: 1 / (2 [2 - 1/ln(R/a)]^2).

    Identical to ``optimal_ratio`` with D = a^2/2; about 0.2 for R ~ 10a, so
    roughly 80% of the effort belongs to global exploration.
    """
    lr = _log_ratio(R, a, 0.5)
    return 1.0 / (2.0 * (2.0 - 1.0 / lr) ** 2)
