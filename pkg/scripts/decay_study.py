#!/usr/bin/env python3
"""Evolve individual eigenmodes and compare the fitted decay rate of the
max-norm against the closed-form lambda_n = (n+1)*alpha - 1.

Usage: python scripts/decay_study.py [--alpha 1.0] [--max-n 4]
"""

import argparse

import numpy as np

from burgersvortex import (
    EigenMode,
    EvolveSpec,
    Field1D,
    Grid1D,
    decay_rate_fit,
    evolve,
    lambda_n,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--tau-end", type=float, default=1.0)
    ap.add_argument("--num-points", type=int, default=1201)
    args = ap.parse_args()

    grid = Grid1D(12.0, args.num_points)
    print(f"alpha = {args.alpha}, tau in [0, {args.tau_end}]\n")
    print(f"{'n':>2}  {'lambda_n':>9}  {'fitted':>9}  {'|error|':>9}  {'r^2':>10}")
    for n in range(args.max_n + 1):
        mode = EigenMode(n=n, alpha=args.alpha)
        vals = mode.profile(grid.points)
        vals[0] = vals[-1] = 0.0
        spec = EvolveSpec(equation="similarity", t_end=args.tau_end, alpha=args.alpha,
                          dt=1e-3, scheme="trapezoidal", record_norms_every=10)
        _, norms, _ = evolve(Field1D(grid, vals), spec)
        rate, r2 = decay_rate_fit(norms.times, norms.linf)
        lam = lambda_n(n, args.alpha)
        print(f"{n:2d}  {lam:9.4f}  {rate:9.4f}  {abs(rate - lam):9.2e}  {r2:10.7f}")
    if np.any([lambda_n(n, args.alpha) < 0 for n in range(args.max_n + 1)]):
        print("\nnegative lambda_n: those modes grow instead of decaying")


if __name__ == "__main__":
    main()
