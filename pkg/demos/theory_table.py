"""Closed-form intermittent-search predictions for a reference scenario.

A searcher with unit relocation speed looks for a target of radius a inside
a region of radius b. The mean search time explodes geometrically with
dimension; the optimal balance assigns roughly 20% of the effort to local
exploitation and 80% to global exploration.
"""

import math

from fireflyopt import theory


def main():
    a, b, u = math.pi / 2.0, 20.0, 1.0
    print(f"scenario: a={a:.4f}  b={b}  u={u}")
    print()
    print(" d   mean search time")
    for d in range(1, 7):
        print(f" {d}   {theory.mean_search_time(d, a, b, u):14.1f}")
    print()
    frac = theory.exploration_fraction(b, a)
    print(f"exploitation fraction of effort: {frac:.4f}")
    print(f"exploration fraction of effort:  {1 - frac:.4f}")

    D = theory.diffusion_from_step(1.0)
    print()
    print(f"optimal tau_a/tau_b^2 (D={D}):   {theory.optimal_ratio(D, a, b):.4f}")
    print(f"minimum detection-phase time:    {theory.tau_a_min(D, u, a, b):.4f}")
    print(f"minimum relocation-phase time:   {theory.tau_b_min(a, u, b):.4f}")


if __name__ == "__main__":
    main()
