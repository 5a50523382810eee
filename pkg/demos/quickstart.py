"""Minimal end-to-end run: firefly search on a 16-dimensional multimodal forest.

Shows the three-step workflow: pick a benchmark, grab calibrated parameters,
run with a seed. The run stops as soon as the best value is within the
objective's accuracy target. Everything is deterministic given the seed.
"""

from dataclasses import replace

from fireflyopt import core, harness, objectives


def main():
    spec = objectives.get_objective("yang_forest", 16)
    params = replace(harness.benchmark_params(spec), seed=42)
    result = core.run(spec, params)

    print(f"objective      {spec.name} d={spec.d}")
    print(f"stop reason    {result.reason}")
    print(f"iterations     {result.iterations_used}")
    print(f"evaluations    {result.evals_used}")
    print(f"best value     {result.best_value:.3e}")
    print("trace (every 5 iterations):")
    for t in range(0, len(result.trace), 5):
        print(f"  t={t:3d}  best={result.trace[t]:.3e}")


if __name__ == "__main__":
    main()
