"""Closed-form search-theory results against extended-precision oracles."""

import math

import mpmath
import numpy as np
import pytest

from fireflyopt.theory import (
    HIGH_DIM_PREFACTOR,
    IntermittentScenario,
    TheoryDomainError,
    diffusion_from_step,
    exploration_fraction,
    mean_search_time,
    optimal_ratio,
    tau_a_min,
    tau_b_min,
)

mpmath.mp.dps = 50


def mp_optimal_ratio(D, a, b):
    lr = mpmath.log(mpmath.mpf(b) / a)
    return (mpmath.mpf(D) / (mpmath.mpf(a) ** 2)) / (2 - 1 / lr) ** 2


def mp_tau_a_min(D, u, a, b):
    lr = mpmath.log(mpmath.mpf(b) / a)
    return (mpmath.mpf(D) / (2 * mpmath.mpf(u) ** 2)) * lr**2 / (2 * lr - 1)


def mp_tau_b_min(a, u, b):
    lr = mpmath.log(mpmath.mpf(b) / a)
    return (mpmath.mpf(a) / u) * mpmath.sqrt(lr - mpmath.mpf(1) / 2)


def mp_mean_search_time(d, a, b, u):
    a, b, u = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(u)
    if d == 1:
        return (2 * b / u) * mpmath.sqrt(b / (3 * a))
    if d == 2:
        return (2 * b**2 / (a * u)) * mpmath.sqrt(mpmath.log(b / a))
    return mpmath.mpf("2.2") * (b / u) * (b / a) ** (d - 1)


def mp_exploration_fraction(R, a):
    lr = mpmath.log(mpmath.mpf(R) / a)
    return 1 / (2 * (2 - 1 / lr) ** 2)


def relerr(got, want):
    return abs(got - float(want)) / abs(float(want))


def random_scenarios(count, seed=5):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        a = float(rng.uniform(0.1, 5.0))
        # keep ln(b/a) > 1/2 with margin so both sides stay in-domain
        b = a * float(rng.uniform(1.8, 200.0))
        u = float(rng.uniform(0.1, 10.0))
        D = float(rng.uniform(0.01, 10.0))
        yield a, b, u, D


def test_optimal_ratio_matches_oracle():
    for a, b, u, D in random_scenarios(10_000):
        assert relerr(optimal_ratio(D, a, b), mp_optimal_ratio(D, a, b)) < 1e-12


def test_tau_a_min_matches_oracle():
    for a, b, u, D in random_scenarios(10_000):
        assert relerr(tau_a_min(D, u, a, b), mp_tau_a_min(D, u, a, b)) < 1e-12


def test_tau_b_min_matches_oracle():
    for a, b, u, D in random_scenarios(10_000):
        assert relerr(tau_b_min(a, u, b), mp_tau_b_min(a, u, b)) < 1e-12


def test_mean_search_time_matches_oracle():
    rng = np.random.default_rng(9)
    for a, b, u, D in random_scenarios(10_000):
        d = int(rng.integers(1, 8))
        assert relerr(mean_search_time(d, a, b, u), mp_mean_search_time(d, a, b, u)) < 1e-12


def test_exploration_fraction_matches_oracle():
    for a, b, u, D in random_scenarios(10_000):
        assert relerr(exploration_fraction(b, a), mp_exploration_fraction(b, a)) < 1e-12


def test_diffusion_from_step():
    assert diffusion_from_step(0.0) == 0.0
    assert diffusion_from_step(2.0) == 2.0
    rng = np.random.default_rng(1)
    for _ in range(100):
        s = float(rng.uniform(0.0, 10.0))
        assert diffusion_from_step(s) == s * s / 2.0
    with pytest.raises(ValueError):
        diffusion_from_step(-1.0)


def test_reference_scenario_values():
    # b = 10a with D = a^2/2 gives the ~0.2 exploitation balance.
    a = 1.7
    assert abs(optimal_ratio(a * a / 2.0, a, 10.0 * a) - 0.2039) <= 1e-3
    # R/a = 12.73 gives the ~0.19 exploitation fraction of total effort.
    assert abs(exploration_fraction(20.0, math.pi / 2.0) - 0.194) <= 1e-3
    # Mean search times for the (a = pi/2, b = 20, u = 1) scenario.
    a, b, u = math.pi / 2.0, 20.0, 1.0
    for d, want in ((1, 82.405), (2, 812.40), (3, 7133.0)):
        assert relerr(mean_search_time(d, a, b, u), want) < 1e-3


def test_high_dim_extends_geometrically():
    a, b, u = math.pi / 2.0, 20.0, 1.0
    ratio = b / a
    for d in range(4, 9):
        assert relerr(mean_search_time(d, a, b, u), mean_search_time(3, a, b, u) * ratio ** (d - 3)) < 1e-12
    assert HIGH_DIM_PREFACTOR == 2.2


def test_domain_errors():
    with pytest.raises(TheoryDomainError):
        optimal_ratio(1.0, 2.0, 1.0)  # a >= b
    with pytest.raises(TheoryDomainError):
        optimal_ratio(1.0, 1.0, 1.5)  # ln(b/a) <= 1/2
    with pytest.raises(TheoryDomainError):
        optimal_ratio(-1.0, 1.0, 10.0)
    with pytest.raises(TheoryDomainError):
        tau_a_min(1.0, 0.0, 1.0, 10.0)
    with pytest.raises(TheoryDomainError):
        tau_b_min(1.0, 1.0, 1.5)
    with pytest.raises(TheoryDomainError):
        mean_search_time(0, 1.0, 10.0, 1.0)
    with pytest.raises(TheoryDomainError):
        mean_search_time(2, 10.0, 1.0, 1.0)
    with pytest.raises(TheoryDomainError):
        exploration_fraction(1.5, 1.0)


def test_scenario_validation():
    s = IntermittentScenario.from_step(a=1.0, b=10.0, u=2.0, s=3.0, d=2)
    assert s.D == 4.5
    assert s.s == 3.0
    with pytest.raises(ValueError):
        IntermittentScenario(a=2.0, b=1.0, u=1.0, D=1.0, d=1)
    with pytest.raises(ValueError):
        IntermittentScenario(a=1.0, b=2.0, u=0.0, D=1.0, d=1)
    with pytest.raises(ValueError):
        IntermittentScenario(a=1.0, b=2.0, u=1.0, D=-1.0, d=1)
    with pytest.raises(ValueError):
        IntermittentScenario(a=1.0, b=2.0, u=1.0, D=1.0, d=0)
