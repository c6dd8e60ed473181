#!/usr/bin/env python3
"""Sweep the strain parameter c1 and report which alpha(c1) candidate the
physical/similarity transform oracle selects at each point.

Usage: python scripts/crosscheck_study.py [--modes 0 1] [--num-points 1001]
"""

import argparse

from burgersvortex import cross_check_transform


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c1-values", type=float, nargs="+",
                    default=[-1.0, -0.5, -0.25, 0.25, 0.4])
    ap.add_argument("--c2", type=float, default=-1.0)
    ap.add_argument("--nu", type=float, default=1.0)
    ap.add_argument("--modes", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--num-points", type=int, default=1001)
    ap.add_argument("--dt", type=float, default=1e-3)
    args = ap.parse_args()

    print(f"{'c1':>6}  {'n':>2}  {'winner':<9}  {'winner err':>11}  {'loser err':>11}  ratio")
    for c1 in args.c1_values:
        # stay inside the horizon for focusing strains (c1 > 0)
        t_end = 0.5 if c1 > 0 else 1.0
        for n in args.modes:
            rep = cross_check_transform(c1, args.c2, args.nu, n, t_end,
                                        num_points=args.num_points, dt=args.dt)
            w = rep.errors[rep.winner]
            loser = max(rep.errors.values())
            ratio = loser / w if w > 0 else float("inf")
            tag = " (degenerate)" if rep.degenerate else ""
            print(f"{c1:6.2f}  {n:2d}  {rep.winner:<9}  {w:11.3e}  {loser:11.3e}  "
                  f"{ratio:8.1f}{tag}")


if __name__ == "__main__":
    main()
