"""Command-line surface.

Subcommands:
  eval          closed-form profiles to CSV
  evolve        time integration, snapshot + norm CSVs
  spectrum      discrete eigenvalues vs the closed form, JSON report
  crosscheck    physical/similarity transform oracle, JSON report
  specfun-check special-function accuracy self-test
  convergence   measured spatial/temporal orders
  accept        full acceptance suite with a pass/fail table

Exit codes: 0 success, 1 numeric failure, 2 config/validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import acceptance, config
from .csvio import read_csv, write_csv, _atomic_write
from .errors import AccuracyError, ConfigError, HorizonError, InstabilityError
from .solutions import SteadyProfile, physical_omega, w_profile
from .solver import EvolveSpec, Field1D, Grid1D, evolve
from .special import hermite, parabolic_cylinder_d
from .strain import SimilarityFrame
from .verify import (
    cross_check_transform,
    build_discrepancy_report,
    discrete_spectrum,
    spatial_order,
    temporal_order,
)


def _parse_tolerances(pairs):
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError("--tolerance", f"expected key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"--tolerance {key}", f"not a number: {value!r}") from exc
    return out


def _out_path(args, name):
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def cmd_eval(args):
    cfg = config.parse_eval_config(config.load_config(args.config))
    grid = cfg["grid"]
    solution = cfg["solution"]
    frame = SimilarityFrame(cfg["strain"], cfg["nu"])
    t = cfg["t"]
    coords = grid.points
    if cfg["coords"] == "x":
        omega = np.asarray(physical_omega(solution, frame, coords, t))
        coord_name = "x"
    else:
        if isinstance(solution, SteadyProfile):
            omega = solution.omega(coords)
        else:
            omega = solution.omega(coords, 0.0)
        coord_name = "xi"
    names = [coord_name, "omega"]
    cols = [coords, omega]
    header = [
        f"columns: {coord_name} (coordinate), omega (vorticity)",
        f"solution: {solution!r}",
    ]
    if cfg["include_w"]:
        if cfg["coords"] == "x":
            w = np.array([w_profile(solution, frame, x, t) for x in coords])
        else:
            # xi coordinates: integrate in x with the unit frame (gamma=nu=1)
            w = np.array([w_profile(solution, frame, frame.x_of(xi, t), t) for xi in coords])
        names.append("w")
        cols.append(w)
        header[0] += ", w (axial velocity, gauge w(0)=0)"
    path = _out_path(args, "eval.csv")
    write_csv(path, names, cols, header)
    print(f"wrote {path} ({grid.num_points} rows)")
    return 0


def cmd_evolve(args):
    cfg = config.parse_evolve_config(config.load_config(args.config))
    grid = cfg["grid"]
    initial_spec = cfg["initial"]
    if isinstance(initial_spec, tuple) and initial_spec[0] == "csv":
        names, cols = read_csv(initial_spec[1])
        if len(cols) < 2 or len(cols[0]) != grid.num_points:
            raise ConfigError("initial.path", "snapshot does not match the configured grid")
        values = cols[1]
    else:
        if cfg["equation"] == "physical":
            frame = SimilarityFrame(cfg["strain"], cfg["nu"])
            values = np.asarray(physical_omega(initial_spec, frame, grid.points, 0.0))
        elif isinstance(initial_spec, SteadyProfile):
            values = initial_spec.omega(grid.points)
        else:
            values = initial_spec.omega(grid.points, 0.0)
        values = values.copy()
        values[0] = values[-1] = 0.0

    spec = EvolveSpec(
        equation=cfg["equation"],
        t_end=cfg["t_end"],
        alpha=cfg["alpha"],
        strain=cfg["strain"],
        nu=cfg["nu"],
        dt=cfg["dt"],
        cfl_factor=cfg["cfl_factor"],
        scheme=cfg["scheme"],
        record_norms_every=cfg["record_norms_every"],
    )
    final, norms, snapshots = evolve(Field1D(grid, values), spec, cfg["snapshot_times"])
    coord = "xi" if cfg["equation"] == "similarity" else "x"
    time_name = "tau" if cfg["equation"] == "similarity" else "t"
    for t_snap, field in snapshots:
        path = _out_path(args, f"snapshot_{time_name}{t_snap:g}.csv")
        write_csv(path, [coord, "omega"], [grid.points, field.values],
                  [f"snapshot at {time_name}={t_snap!r}"])
        print(f"wrote {path}")
    norms_path = _out_path(args, "norms.csv")
    write_csv(norms_path, [time_name, "l2", "linf"], [norms.times, norms.l2, norms.linf],
              ["norm time-series of the evolved field"])
    print(f"wrote {norms_path}")
    return 0


def cmd_spectrum(args, tolerances):
    cfg = config.parse_spectrum_config(config.load_config(args.config))
    threshold = tolerances.get("spectrum", cfg["threshold"])
    report = discrete_spectrum(cfg["alpha"], cfg["grid"], cfg["k"])
    payload = report.to_dict()
    payload["threshold"] = threshold
    # flag rates negative beyond the tolerance (not mere rounding of a zero)
    payload["growing_modes"] = [i for i, v in report.computed if v < -threshold]
    path = _out_path(args, "spectrum.json")
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")
    print(f"alpha={cfg['alpha']}  k={cfg['k']}")
    for (i, v), c, e in zip(report.computed, report.closed_form, report.abs_errors):
        flag = "  <- growing mode" if v < -threshold else ""
        print(f"  n={i}: computed {v:+.8f}  closed-form {c:+.8f}  |err| {e:.2e}{flag}")
    print(f"wrote {path}")
    return 0 if all(e < threshold for e in report.abs_errors) else 1


def cmd_crosscheck(args):
    cfg = config.parse_crosscheck_config(config.load_config(args.config))
    reports = []
    for n in cfg["modes"]:
        rep = cross_check_transform(cfg["c1"], cfg["c2"], cfg["nu"], n, cfg["t_end"],
                                    num_points=cfg["num_points"], dt=cfg["dt"])
        reports.append(rep)
        extra = "  (degenerate at c1=0: both candidates coincide)" if rep.degenerate else ""
        print(f"mode n={n}: winner {rep.winner}{extra}")
        for label, err in rep.errors.items():
            print(f"    alpha = {label:<9} max error {err:.3e}")
    discrepancies = build_discrepancy_report(num_points=min(cfg["num_points"], 1001))
    payload = {
        "cross_checks": [r.to_dict() for r in reports],
        "discrepancy_report": [d.to_dict() for d in discrepancies],
    }
    path = _out_path(args, "crosscheck.json")
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")
    print(f"wrote {path}")
    winners = {r.winner for r in reports}
    return 0 if len(winners) == 1 else 1


def cmd_specfun_check(args, tolerances):
    tol_rec = tolerances.get("recurrence", 1e-9)
    tol_int = tolerances.get("integer_reduction", 1e-10)
    tol_weber = tolerances.get("weber", 1e-8)
    ok = True

    zs = np.linspace(-8.0, 8.0, 33)
    worst = 0.0
    for nu in np.linspace(-1.5, 3.5, 11):
        dm1 = parabolic_cylinder_d(nu - 1.0, zs)
        d0 = parabolic_cylinder_d(nu, zs)
        dp1 = parabolic_cylinder_d(nu + 1.0, zs)
        scale = np.maximum(1.0, np.abs(dp1) + np.abs(zs * d0) + np.abs(nu * dm1))
        worst = max(worst, float(np.max(np.abs(dp1 - zs * d0 + nu * dm1) / scale)))
    ok &= worst < tol_rec
    print(f"recurrence identity residual: {worst:.2e} (tol {tol_rec:g}) "
          f"{'PASS' if worst < tol_rec else 'FAIL'}")

    zs = np.linspace(-6.0, 6.0, 241)
    worst = 0.0
    for n in range(7):
        ref = 2.0 ** (-n / 2.0) * np.exp(-0.25 * zs * zs) * hermite(n, zs / math.sqrt(2.0))
        worst = max(worst, float(np.max(np.abs(parabolic_cylinder_d(float(n), zs) - ref))))
    ok &= worst < tol_int
    print(f"integer-order Hermite reduction: {worst:.2e} (tol {tol_int:g}) "
          f"{'PASS' if worst < tol_int else 'FAIL'}")

    # Weber residual by finite differences of the evaluator
    rng = np.random.default_rng(7)
    fd = 0.02
    offsets = np.arange(-3, 4) * fd
    d2 = np.array([1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90])
    worst = 0.0
    for nu in rng.uniform(-2.0, 4.0, 20):
        z0 = rng.uniform(-7.5, 7.5, 10)
        pts = (z0[:, None] + offsets[None, :]).ravel()
        vals = parabolic_cylinder_d(nu, pts).reshape(len(z0), 7)
        u = vals[:, 3]
        upp = vals @ d2 / (fd * fd)
        res = np.abs(upp + (nu + 0.5 - 0.25 * z0 * z0) * u)
        worst = max(worst, float(np.max(res / (np.abs(u) + np.abs(upp) + 1.0))))
    ok &= worst < tol_weber
    print(f"Weber equation residual: {worst:.2e} (tol {tol_weber:g}) "
          f"{'PASS' if worst < tol_weber else 'FAIL'}")

    # handoff continuity between the series and ODE regimes
    for z0, label in ((4.5, "series/ODE"), (-4.5, "series/ODE"), (20.0, "ODE/asymptotic")):
        gaps = []
        for nu in (-1.3, 0.4, 2.7):
            lo = parabolic_cylinder_d(nu, z0 - 1e-9)
            hi = parabolic_cylinder_d(nu, z0 + 1e-9)
            gaps.append(abs(hi - lo) / max(1.0, abs(hi)))
        print(f"handoff at z={z0:+g} ({label}): max relative jump {max(gaps):.2e}")
    return 0 if ok else 1


def cmd_convergence(args):
    sp = spatial_order()
    tp = temporal_order()
    print("spatial orders (grid halving):   " + ", ".join(f"{o:.3f}" for o in sp))
    print("temporal orders (dt halving):    " + ", ".join(f"{o:.3f}" for o in tp))
    ok = min(sp) >= 1.9 and min(tp) >= 3.8
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_accept(args):
    results = acceptance.run_all(threads=args.threads)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  ({r.elapsed:6.2f}s)  {r.detail}")
        failed += not r.passed
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="burgersvortex",
        description="Verification workbench for the strained-vortex similarity solutions",
    )
    parser.add_argument("--out", default=".", help="output directory (default: cwd)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent jobs (accept)")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all methods are deterministic")
    parser.add_argument("--tolerance", action="append", metavar="KEY=VALUE",
                        help="override a named tolerance (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, needs_config in [("eval", True), ("evolve", True), ("spectrum", True),
                               ("crosscheck", True), ("specfun-check", False),
                               ("convergence", False), ("accept", False)]:
        p = sub.add_parser(name)
        if needs_config:
            p.add_argument("--config", required=True, help="path to the run-config JSON")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tolerances = _parse_tolerances(args.tolerance)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "evolve":
            return cmd_evolve(args)
        if args.command == "spectrum":
            return cmd_spectrum(args, tolerances)
        if args.command == "crosscheck":
            return cmd_crosscheck(args)
        if args.command == "specfun-check":
            return cmd_specfun_check(args, tolerances)
        if args.command == "convergence":
            return cmd_convergence(args)
        if args.command == "accept":
            return cmd_accept(args)
        parser.error(f"unknown command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except HorizonError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, InstabilityError, OverflowError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
