"""Optimizer core: update formulas, reduction identities, accounting, determinism."""

import math

import numpy as np
import pytest

from fireflyopt import core, objectives
from fireflyopt.core import (
    EXPLOIT_ALPHA_FACTOR,
    FaParameters,
    RngStream,
    SearchDomain,
    attractiveness,
    cooled_alpha,
    derive_defaults,
    init_state,
    move_firefly,
    run,
    schedule_alpha,
    step,
)


def relerr(got, want):
    if want == 0.0:
        return abs(got)
    return abs(got - want) / abs(want)


# ---------------------------------------------------------------------------
# Formula oracles
# ---------------------------------------------------------------------------

def test_attractiveness_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(10_000):
        beta0 = float(rng.uniform(0.0, 3.0))
        gamma = float(rng.uniform(0.0, 5.0))
        r = float(rng.uniform(0.0, 10.0))
        want = beta0 * math.e ** (-gamma * r * r)
        assert relerr(attractiveness(beta0, gamma, r), want) < 1e-12
    assert attractiveness(1.0, 1.0, 0.0) == 1.0
    assert attractiveness(0.7, 2.0, 0.0) == 0.7
    with pytest.raises(ValueError):
        attractiveness(-0.1, 1.0, 1.0)
    with pytest.raises(ValueError):
        attractiveness(1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        attractiveness(1.0, 1.0, -1.0)


def test_cooled_alpha_matches_oracle():
    rng = np.random.default_rng(4)
    for _ in range(10_000):
        alpha0 = float(rng.uniform(0.0, 5.0))
        delta = float(rng.uniform(0.05, 1.0))
        t = int(rng.integers(0, 500))
        want = alpha0 * delta**t
        assert relerr(cooled_alpha(alpha0, delta, t), want) < 1e-12
    assert cooled_alpha(1.5, 0.9, 0) == 1.5
    assert cooled_alpha(1.0, 1.0, 10_000) == 1.0
    with pytest.raises(ValueError):
        cooled_alpha(1.0, 0.0, 1)
    with pytest.raises(ValueError):
        cooled_alpha(1.0, 1.1, 1)
    with pytest.raises(ValueError):
        cooled_alpha(1.0, 0.9, -1)


def test_move_matches_oracle():
    rng = np.random.default_rng(6)
    for _ in range(10_000):
        d = int(rng.integers(1, 6))
        x_i = rng.uniform(-5.0, 5.0, d)
        x_j = rng.uniform(-5.0, 5.0, d)
        noise = rng.standard_normal(d)
        beta0 = float(rng.uniform(0.0, 2.0))
        gamma = float(rng.uniform(0.0, 3.0))
        alpha = float(rng.uniform(0.0, 1.0))
        r2 = sum((float(a) - float(b)) ** 2 for a, b in zip(x_i, x_j))
        beta = beta0 * math.exp(-gamma * r2)
        want = x_i + beta * (x_j - x_i) + alpha * noise
        got = move_firefly(x_i, x_j, beta0, gamma, alpha, noise)
        assert np.max(np.abs(got - want)) < 1e-12


def test_reduction_identities():
    # gamma = 0 removes distance dependence: a fixed-fraction pull toward the
    # brighter firefly plus noise. beta0 = 0 removes attraction entirely.
    rng = np.random.default_rng(8)
    for _ in range(10_000):
        d = int(rng.integers(1, 6))
        x_i = rng.uniform(-5.0, 5.0, d)
        x_j = rng.uniform(-5.0, 5.0, d)
        noise = rng.standard_normal(d)
        beta0 = float(rng.uniform(0.0, 2.0))
        gamma = float(rng.uniform(0.0, 3.0))
        alpha = float(rng.uniform(0.0, 1.0))
        flat = move_firefly(x_i, x_j, beta0, 0.0, alpha, noise)
        assert np.array_equal(flat, x_i + beta0 * (x_j - x_i) + alpha * noise)
        walk = move_firefly(x_i, x_j, 0.0, gamma, alpha, noise)
        assert np.array_equal(walk, x_i + alpha * noise)


def test_move_shape_mismatch():
    with pytest.raises(ValueError):
        move_firefly(np.zeros(2), np.zeros(3), 1.0, 1.0, 0.1, np.zeros(2))


# ---------------------------------------------------------------------------
# Domain and parameters
# ---------------------------------------------------------------------------

def test_domain_basics():
    dom = SearchDomain.cube(-2.0, 3.0, 4)
    assert dom.d == 4
    assert dom.scale == 5.0
    assert dom.contains(np.zeros(4))
    assert not dom.contains(np.full(4, 3.5))
    clamped = dom.clamp(np.array([-5.0, 0.0, 10.0, 2.0]))
    assert np.array_equal(clamped, [-2.0, 0.0, 3.0, 2.0])
    ragged = SearchDomain(np.array([0.0, -1.0]), np.array([1.0, 4.0]))
    assert ragged.scale == 3.0


def test_domain_validation():
    with pytest.raises(ValueError):
        SearchDomain(np.array([0.0]), np.array([0.0]))
    with pytest.raises(ValueError):
        SearchDomain(np.array([0.0, 0.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        SearchDomain(np.array([]), np.array([]))


def test_parameter_validation():
    FaParameters(n=1)
    with pytest.raises(ValueError):
        FaParameters(n=0)
    with pytest.raises(ValueError):
        FaParameters(beta0=-0.1)
    with pytest.raises(ValueError):
        FaParameters(gamma=-0.1)
    with pytest.raises(ValueError):
        FaParameters(alpha0=-0.1)
    with pytest.raises(ValueError):
        FaParameters(delta=0.0)
    with pytest.raises(ValueError):
        FaParameters(delta=1.0001)
    with pytest.raises(ValueError):
        FaParameters(t_max=-1)
    with pytest.raises(ValueError):
        FaParameters(eval_budget=-1)
    with pytest.raises(ValueError):
        FaParameters(noise_kind="cauchy")
    with pytest.raises(ValueError):
        FaParameters(t_max=3, mode_schedule=("explore", "exploit"))
    with pytest.raises(ValueError):
        FaParameters(t_max=2, mode_schedule=("explore", "sprint"))


def test_derive_defaults():
    dom = SearchDomain.cube(-10.0, 10.0, 2)
    p = derive_defaults(dom)
    assert p.n == 25
    assert p.beta0 == 1.0
    assert relerr(p.gamma, 1.0 / math.sqrt(20.0)) < 1e-12
    assert relerr(p.alpha0, 0.2) < 1e-12
    assert p.delta == 0.97
    q = derive_defaults(dom, n=7, delta=0.9)
    assert (q.n, q.delta) == (7, 0.9)
    assert q.gamma == p.gamma


def test_schedule_alpha():
    p = FaParameters(alpha0=2.0, delta=0.9, t_max=4,
                     mode_schedule=("explore", "exploit", "explore", "exploit"))
    assert schedule_alpha(p, 0) == 2.0
    assert relerr(schedule_alpha(p, 1), EXPLOIT_ALPHA_FACTOR * 2.0 * 0.9) < 1e-12
    assert schedule_alpha(p, 2) == 2.0
    plain = FaParameters(alpha0=2.0, delta=0.9)
    assert relerr(schedule_alpha(plain, 3), 2.0 * 0.9**3) < 1e-12


# ---------------------------------------------------------------------------
# RNG stream
# ---------------------------------------------------------------------------

def test_rng_determinism():
    a = RngStream(123)
    b = RngStream(123)
    assert np.array_equal(a.noise(5), b.noise(5))
    assert np.array_equal(a.noise(3, "uniform_symmetric"), b.noise(3, "uniform_symmetric"))
    dom = SearchDomain.cube(-1.0, 1.0, 2)
    assert np.array_equal(a.initial_positions(dom, 4), b.initial_positions(dom, 4))
    assert not np.array_equal(RngStream(1).noise(5), RngStream(2).noise(5))


def test_rng_noise_ranges():
    rng = RngStream(0)
    u = rng.noise(10_000, "uniform_symmetric")
    assert np.all(u >= -0.5) and np.all(u <= 0.5)
    with pytest.raises(ValueError):
        rng.noise(2, "poisson")


def test_initial_positions_inside_domain():
    dom = SearchDomain.cube(-3.0, 7.0, 5)
    pos = RngStream(9).initial_positions(dom, 50)
    assert pos.shape == (50, 5)
    assert np.all(pos >= -3.0) and np.all(pos <= 7.0)


# ---------------------------------------------------------------------------
# Sweep accounting and run control
# ---------------------------------------------------------------------------

def test_step_costs_n_evals():
    spec = objectives.make_dejong(3)
    params = FaParameters(n=8, t_max=10, seed=0)
    rng = RngStream(0)
    state = init_state(spec, params, rng)
    assert state.evals == 8
    for k in range(1, 4):
        step(state, params, spec, rng)
        assert state.evals == 8 + 8 * k
        assert state.iteration == k


def test_positions_stay_in_domain():
    spec = objectives.make_yang_forest(4)
    params = FaParameters(n=10, alpha0=5.0, t_max=5, seed=1)
    rng = RngStream(1)
    state = init_state(spec, params, rng)
    for _ in range(5):
        step(state, params, spec, rng)
        assert np.all(state.positions >= spec.domain.lower)
        assert np.all(state.positions <= spec.domain.upper)


def test_best_value_never_degrades():
    spec = objectives.make_dejong(4)
    params = FaParameters(n=10, t_max=30, seed=3)
    result = run(spec, params, stop_on_accuracy=False)
    assert result.trace == sorted(result.trace, reverse=True)
    assert result.best_value == result.trace[-1]
    assert relerr(spec.evaluate(result.best_position), result.best_value) < 1e-12


def test_run_deterministic():
    spec = objectives.make_dejong(5)
    params = FaParameters(n=12, t_max=40, seed=77)
    r1 = run(spec, params)
    r2 = run(spec, params)
    assert r1.best_value == r2.best_value
    assert np.array_equal(r1.best_position, r2.best_position)
    assert r1.trace == r2.trace
    assert r1.evals_used == r2.evals_used


def test_run_stop_reasons():
    spec = objectives.make_dejong(2)
    out = run(spec, FaParameters(n=5, t_max=3, seed=0), stop_on_accuracy=False)
    assert out.reason == "iterations"
    assert out.iterations_used == 3
    assert out.evals_used == 5 * 3 + 5
    assert len(out.trace) == 4  # init plus one entry per iteration

    out = run(spec, FaParameters(n=5, t_max=100, eval_budget=23, seed=0),
              stop_on_accuracy=False)
    assert out.reason == "evaluations"
    assert out.evals_used <= 23

    out = run(spec, FaParameters(n=5, t_max=100, seed=0), target_accuracy=float("inf"))
    assert out.reason == "accuracy"
    assert out.evals_used == 5  # degenerate target met at initialization


def test_budget_stops_mid_sweep():
    spec = objectives.make_dejong(2)
    params = FaParameters(n=10, t_max=100, eval_budget=14, seed=5)
    out = run(spec, params, stop_on_accuracy=False)
    assert out.evals_used == 14
    assert out.iterations_used == 0  # partial sweep does not count


def test_equal_brightness_means_no_attraction():
    # On a constant objective no firefly is strictly brighter, so every
    # firefly takes a pure random-walk step; with alpha0 = 0 nothing moves.
    class Flat:
        name = "flat"
        d = 3
        domain = SearchDomain.cube(-1.0, 1.0, 3)
        sense = "minimize"

        @staticmethod
        def evaluate(x):
            return 4.2

    params = FaParameters(n=6, alpha0=0.0, t_max=3, seed=0)
    rng = RngStream(0)
    state = init_state(Flat, params, rng)
    before = state.positions.copy()
    step(state, params, Flat, rng)
    assert np.array_equal(state.positions, before)


def test_single_firefly_random_walks():
    spec = objectives.make_dejong(2)
    params = FaParameters(n=1, alpha0=0.5, t_max=5, seed=2)
    out = run(spec, params, stop_on_accuracy=False)
    assert out.evals_used == 1 + 5


def test_maximization_sense():
    spec = objectives.make_four_peak(2)
    params = FaParameters(n=15, t_max=30, seed=4)
    out = run(spec, params, stop_on_accuracy=False)
    assert out.trace == sorted(out.trace)  # best value climbs


def test_objective_failure_wrapped():
    class Broken:
        name = "broken"
        d = 2
        domain = SearchDomain.cube(-1.0, 1.0, 2)
        sense = "minimize"

        @staticmethod
        def evaluate(x):
            raise RuntimeError("boom")

    with pytest.raises(core.ObjectiveEvaluationError):
        run(Broken, FaParameters(n=3, t_max=1, seed=0), stop_on_accuracy=False)
