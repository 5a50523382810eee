"""Command-line front end: runs, experiments and theory tables as CSV.

Every emitted CSV starts with ``# key = value`` metadata lines recording the
fully resolved configuration; feeding such a file back through ``--config``
reproduces the output byte for byte. Flag values override config-file values,
which override derived defaults. Exit codes: 0 success, 1 runtime failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field, fields, replace

from fireflyopt import core, harness, objectives, theory
from fireflyopt.core import NOISE_KINDS, FaParameters

COMMANDS = ("run", "q-sweep", "dim-scaling", "subdivision", "evals-benchmark", "theory")


class UsageError(ValueError):
    """Bad flags, config keys or config values."""


# ---------------------------------------------------------------------------
# Config model
# ---------------------------------------------------------------------------

@dataclass
class CliConfig:
    """Fully resolved invocation. Fields unused by a command stay None."""

    command: str
    objective: str | None = None
    dim: int | None = None
    n: int | None = None
    beta0: float | None = None
    gamma: float | None = None
    alpha0: float | None = None
    delta: float | None = None
    iters: int | None = None
    eval_budget: int | None = None
    noise: str | None = None
    q: float | None = None
    seed: int | None = None
    trials: int | None = None
    base_seed: int | None = None
    q_values: tuple[float, ...] | None = None
    dims: tuple[int, ...] | None = None
    budget: int | dict[int, int] | None = None
    a: float | None = None
    b: float | None = None
    u: float | None = None
    dump_prefix: str | None = None
    output: str = "-"


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _budget(text: str) -> int | dict[int, int]:
    """Either one shared iteration budget or per-dimension ``d:budget`` pairs."""
    try:
        if ":" not in text:
            return int(text)
        out = {}
        for part in text.split(","):
            k, v = part.split(":")
            out[int(k)] = int(v)
        return out
    except ValueError:
        raise UsageError(f"expected an integer or d:budget pairs, got {text!r}") from None


def _noise(text: str) -> str:
    if text not in NOISE_KINDS:
        raise UsageError(f"noise must be one of {NOISE_KINDS}, got {text!r}")
    return text


def _objective_name(text: str) -> str:
    if text not in objectives.OBJECTIVE_NAMES:
        raise UsageError(
            f"objective must be one of {objectives.OBJECTIVE_NAMES}, got {text!r}"
        )
    return text


# (dest, converter, default, help) per command; the same tables drive flag
# parsing, config-file parsing and metadata rendering.
_FA_OPTS = [
    ("n", int, None, "population size"),
    ("beta0", float, None, "attractiveness at zero distance"),
    ("gamma", float, None, "light absorption coefficient"),
    ("alpha0", float, None, "initial randomness scale"),
    ("delta", float, None, "geometric cooling factor per iteration"),
    ("eval_budget", int, None, "hard cap on objective evaluations"),
    ("noise", _noise, None, "perturbation distribution"),
]

_OPTIONS: dict[str, list[tuple]] = {
    "run": [
        ("objective", _objective_name, None, "benchmark to optimize"),
        ("dim", int, 2, "problem dimension"),
        *_FA_OPTS,
        ("iters", int, 100, "iteration budget"),
        ("q", float, None, "exploit/explore ratio; builds an interleaved schedule"),
        ("seed", int, 0, "random seed"),
    ],
    "q-sweep": [
        ("q_values", _float_list, (0.4, 0.3, 0.2, 0.1, 0.05), "ratios to sweep"),
        ("trials", int, 25, "trials per ratio"),
        ("n", int, 15, "population size"),
        ("iters", int, 1000, "iterations per run"),
        ("dim", int, 2, "problem dimension"),
        ("base_seed", int, 0, "seed of trial 0"),
    ],
    "subdivision": [
        ("n", int, 25, "population size"),
        ("iters", int, 20, "iterations per run"),
        ("trials", int, 100, "number of trials"),
        ("base_seed", int, 0, "seed of trial 0"),
        *_FA_OPTS[1:],  # n already present
        ("dump_prefix", str, None, "write initial/final position dumps here"),
    ],
    "evals-benchmark": [
        ("objective", _objective_name, None, "benchmark to optimize"),
        ("dim", int, None, "problem dimension"),
        *_FA_OPTS,
        ("iters", int, None, "iteration budget"),
        ("trials", int, 10, "number of trials"),
        ("base_seed", int, 0, "seed of trial 0"),
    ],
    "dim-scaling": [
        ("dims", _int_list, (2, 3, 4, 5, 6), "dimensions to run"),
        ("budget", _budget, dict(harness.DIM_SCALING_BUDGETS), "iteration budget, shared or d:budget pairs"),
        ("trials", int, 10, "trials per dimension"),
        ("base_seed", int, 0, "seed of trial 0"),
        ("a", float, math.pi / 2.0, "target radius"),
        ("b", float, 20.0, "search region radius"),
        ("u", float, 1.0, "relocation speed"),
    ],
    "theory": [
        ("a", float, math.pi / 2.0, "target radius"),
        ("b", float, 20.0, "search region radius"),
        ("u", float, 1.0, "relocation speed"),
        ("dims", _int_list, (1, 2, 3), "dimensions to tabulate"),
    ],
}

_COMMON = [("output", str, "-", "output path, - for stdout")]

_BENCHMARK_DEFAULT_DIM = {"dejong": 256, "yang_forest": 16}


def _flag(dest: str) -> str:
    return "--" + dest.replace("_", "-")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fireflyopt",
        description="Firefly-swarm optimizer: runs, experiments and theory tables.",
    )
    parser.add_argument("--config", help="key = value file (or a previously emitted CSV)")
    sub = parser.add_subparsers(dest="command")
    for command, opts in _OPTIONS.items():
        p = sub.add_parser(command)
        for dest, conv, default, help_text in opts + _COMMON:
            p.add_argument(_flag(dest), dest=dest, type=conv, default=None, help=help_text)
    return parser


# ---------------------------------------------------------------------------
# Config file round trip
# ---------------------------------------------------------------------------

def _format_value(value) -> str:
    if isinstance(value, tuple):
        return ",".join(_format_value(v) for v in value)
    if isinstance(value, dict):
        return ",".join(f"{k}:{v}" for k, v in sorted(value.items()))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(config: CliConfig) -> str:
    """Canonical ``key = value`` text; parsing it back yields an equal config.

    The output path is deliberately omitted: it is not part of the experiment,
    and omitting it is what makes re-runs to a fresh path byte-identical.
    """
    lines = [f"command = {config.command}"]
    for dest, _conv, _default, _help in _OPTIONS[config.command]:
        value = getattr(config, dest)
        if value is not None:
            lines.append(f"{dest} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def _read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    return _parse_config_lines(text, csv_style=path.endswith(".csv"))


def _parse_config_lines(text: str, csv_style: bool = False) -> dict[str, str]:
    """``key = value`` lines; in CSV files only ``#``-prefixed lines count."""
    entries: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if csv_style:
            if not line.startswith("#"):
                continue
            line = line.lstrip("#").strip()
            if "=" not in line:
                continue
        else:
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"malformed config line: {raw!r}")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()
    return entries


def _apply_entries(config_kwargs: dict, entries: dict[str, str], command: str) -> None:
    converters = {d: c for d, c, _dft, _h in _OPTIONS[command] + _COMMON}
    for key, value in entries.items():
        if key == "command":
            continue
        if key not in converters:
            raise UsageError(f"unknown config key {key!r} for command {command!r}")
        try:
            config_kwargs[key] = converters[key](value)
        except UsageError:
            raise
        except ValueError:
            raise UsageError(f"bad value for {key!r}: {value!r}") from None


def _resolve(config: CliConfig) -> CliConfig:
    """Fill derived defaults so the emitted metadata is self-contained."""
    if config.command in ("run", "evals-benchmark"):
        if config.objective is None:
            raise UsageError(f"{config.command} requires --objective")
        if config.dim is None:
            config.dim = _BENCHMARK_DEFAULT_DIM.get(config.objective, 2)
        spec = objectives.get_objective(config.objective, config.dim)
        if config.command == "run":
            base = core.derive_defaults(spec.domain)
        else:
            base = harness.benchmark_params(spec)
            if config.iters is None:
                config.iters = base.t_max
        for dest, attr in (
            ("n", "n"), ("beta0", "beta0"), ("gamma", "gamma"),
            ("alpha0", "alpha0"), ("delta", "delta"), ("noise", "noise_kind"),
        ):
            if getattr(config, dest) is None:
                setattr(config, dest, getattr(base, attr))
    elif config.command == "subdivision":
        base = harness.subdivision_params(config.n, config.iters)
        for dest, attr in (
            ("beta0", "beta0"), ("gamma", "gamma"), ("alpha0", "alpha0"),
            ("delta", "delta"), ("noise", "noise_kind"),
        ):
            if getattr(config, dest) is None:
                setattr(config, dest, getattr(base, attr))
    return config


def parse_config(argv: list[str]) -> CliConfig:
    """Resolve argv (plus any ``--config`` file) into a complete CliConfig."""
    parser = _build_parser()
    argv = list(argv)
    entries: dict[str, str] = {}
    if not any(t in COMMANDS for t in argv) and "--config" in argv:
        # the subcommand comes from the config file; splice it in for argparse
        i = argv.index("--config")
        if i + 1 >= len(argv):
            raise UsageError("--config needs a path")
        path = argv[i + 1]
        entries = _read_config_file(path)
        command = entries.get("command")
        if command not in COMMANDS:
            raise UsageError(f"config {path!r} has no valid command line")
        del argv[i:i + 2]
        argv = ["--config", path, command, *argv]
    args = parser.parse_args(argv)
    command = args.command
    if args.config is not None and not entries:
        entries = _read_config_file(args.config)
    if command is None:
        parser.print_usage(sys.stderr)
        raise UsageError("a command is required")

    kwargs: dict = {"command": command}
    for dest, _conv, default, _help in _OPTIONS[command] + _COMMON:
        kwargs[dest] = default
    _apply_entries(kwargs, entries, command)
    for dest, _conv, _default, _help in _OPTIONS[command] + _COMMON:
        flag_value = getattr(args, dest, None)
        if flag_value is not None:
            kwargs[dest] = flag_value
    return _resolve(CliConfig(**kwargs))


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def _csv(config: CliConfig, header: list[str], rows: list[list], extra: list[str] = ()) -> str:
    lines = ["# " + line for line in render(config).splitlines()]
    lines += ["# " + line for line in extra]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _params_from_config(config: CliConfig, t_max: int, seed: int) -> FaParameters:
    schedule = None
    if config.q is not None:
        schedule = harness.build_mode_schedule(config.q, t_max).tags
    kwargs = dict(
        n=config.n,
        beta0=config.beta0,
        gamma=config.gamma,
        alpha0=config.alpha0,
        delta=config.delta,
        t_max=t_max,
        eval_budget=config.eval_budget,
        seed=seed,
        noise_kind=config.noise,
        mode_schedule=schedule,
    )
    return FaParameters(**{k: v for k, v in kwargs.items() if v is not None})


def _execute_run(config: CliConfig) -> str:
    spec = objectives.get_objective(config.objective, config.dim)
    params = _params_from_config(config, config.iters, config.seed)
    result = core.run(spec, params)
    extra = [
        f"best_value: {_format_value(result.best_value)}",
        "best_position: " + " ".join(repr(v) for v in result.best_position),
        f"evals_used: {result.evals_used}",
        f"iterations_used: {result.iterations_used}",
        f"reason: {result.reason}",
    ]
    rows = [[t, v] for t, v in enumerate(result.trace)]
    return _csv(config, ["iteration", "best_value"], rows, extra)


def _execute_q_sweep(config: CliConfig) -> str:
    rows = harness.q_sweep(
        list(config.q_values),
        n_trials=config.trials,
        n=config.n,
        t_max=config.iters,
        d=config.dim,
        base_seed=config.base_seed,
    )
    return _csv(
        config,
        ["q", "median_best", "mean_best"],
        [[r.q, r.median_best, r.mean_best] for r in rows],
    )


def _execute_subdivision(config: CliConfig) -> str:
    params = _params_from_config(config, config.iters, 0)
    result = harness.subdivision_experiment(
        n=config.n,
        t=config.iters,
        n_trials=config.trials,
        base_seed=config.base_seed,
        params=params,
    )
    if config.dump_prefix is not None:
        for trial in result.trials:
            for stage, pos in (
                ("initial", trial.initial_positions),
                ("final", trial.final_positions),
            ):
                path = f"{config.dump_prefix}_seed{trial.seed}_{stage}.txt"
                with open(path, "w") as fh:
                    for p in pos:
                        fh.write(" ".join(repr(v) for v in p) + "\n")
    extra = [
        "peak_histogram: "
        + " ".join(f"{k}:{v}" for k, v in result.peak_histogram.items()),
        f"all_found_rate: {_format_value(result.all_found_rate)}",
    ]
    rows = [[t.seed, t.peaks_found, t.evals_used] for t in result.trials]
    return _csv(config, ["seed", "peaks_found", "evals_used"], rows, extra)


def _execute_evals_benchmark(config: CliConfig) -> str:
    spec = objectives.get_objective(config.objective, config.dim)
    params = _params_from_config(config, config.iters, 0)
    report = harness.evals_benchmark(spec, params, config.trials, config.base_seed)
    s = report.summary
    extra = [
        f"success_rate: {_format_value(s.success_rate)}",
        f"mean_evals: {_format_value(s.mean_evals) if s.mean_evals is not None else 'undefined'}",
        f"std_evals: {_format_value(s.std_evals) if s.std_evals is not None else 'undefined'}",
        f"median_best: {_format_value(s.median_best)}",
    ]
    for method, (mean, std) in report.reference.items():
        extra.append(f"reference_{method}: {_format_value(mean)} +- {_format_value(std)}")
    rows = [
        [r.seed, int(r.success), r.evals_used, r.iterations_used, r.best_value]
        for r in report.records
    ]
    return _csv(
        config,
        ["seed", "success", "evals_used", "iterations_used", "best_value"],
        rows,
        extra,
    )


def _execute_dim_scaling(config: CliConfig) -> str:
    rows = harness.dim_scaling(
        list(config.dims),
        config.budget,
        config.trials,
        base_seed=config.base_seed,
        a=config.a,
        b=config.b,
        u=config.u,
    )
    return _csv(
        config,
        ["d", "mean_iterations", "n_success", "n_censored", "theory_iterations", "ratio"],
        [
            [r.d, r.mean_iterations, r.n_success, r.n_censored, r.theory_iterations, r.ratio]
            for r in rows
        ],
    )


def _execute_theory(config: CliConfig) -> str:
    rows = [[d, theory.mean_search_time(d, config.a, config.b, config.u)] for d in config.dims]
    extra = []
    try:
        extra.append(
            "exploration_fraction: "
            + _format_value(theory.exploration_fraction(config.b, config.a))
        )
    except theory.TheoryDomainError:
        pass
    return _csv(config, ["d", "mean_search_time"], rows, extra)


_EXECUTORS = {
    "run": _execute_run,
    "q-sweep": _execute_q_sweep,
    "subdivision": _execute_subdivision,
    "evals-benchmark": _execute_evals_benchmark,
    "dim-scaling": _execute_dim_scaling,
    "theory": _execute_theory,
}


def execute(config: CliConfig) -> int:
    """Run the configured command and write its CSV artifact."""
    try:
        text = _EXECUTORS[config.command](config)
        _write(text, config.output)
    except UsageError:
        raise
    except Exception as exc:
        print(f"fireflyopt: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"fireflyopt: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
