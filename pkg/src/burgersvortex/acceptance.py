"""Desk-scale acceptance suite: one callable per criterion.

Each criterion returns a CriterionResult; the CLI `accept` subcommand and
tests/test_acceptance.py both run these, so the gate is a single source of
truth.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .solutions import EigenMode, SteadyProfile, lambda_n
from .solver import EvolveSpec, Field1D, Grid1D, evolve
from .special import hermite, parabolic_cylinder_d
from .verify import (
    build_discrepancy_report,
    cross_check_transform,
    decay_rate_fit,
    discrete_spectrum,
    ode_residual,
    pde_residual_steady,
    spatial_order,
    temporal_order,
)

# The centered-difference spectrum operator reproduces (n+1)alpha - 1
# exactly at every h; the only residual error is domain truncation,
# exponentially small in the half-width and constant under h-refinement.
# The refinement-order clause is therefore measurable only if an algebraic
# error component existed; below this floor (1% of the 1e-3 tolerance) the
# spectrum is declared converged and the order check is vacuous.
SPECTRUM_ORDER_FLOOR = 1e-5


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0


def _timed(fn):
    def wrapper():
        t0 = time.perf_counter()
        result = fn()
        result.elapsed = time.perf_counter() - t0
        return result

    return wrapper


@_timed
def criterion_1_eigenvalue_law() -> CriterionResult:
    """Spectra at alpha in {0.5, 1, 2} reproduce (n+1)alpha - 1."""
    t0 = time.perf_counter()
    notes = []
    ok = True
    for alpha in (0.5, 1.0, 2.0):
        coarse = discrete_spectrum(alpha, Grid1D(10.0, 2001), 5)
        fine = discrete_spectrum(alpha, Grid1D(10.0, 4001), 5)
        e_coarse = max(coarse.abs_errors)
        e_fine = max(fine.abs_errors)
        if e_coarse >= 1e-3:
            ok = False
            notes.append(f"alpha={alpha}: error {e_coarse:.2e} >= 1e-3")
            continue
        if e_coarse < SPECTRUM_ORDER_FLOOR and e_fine < SPECTRUM_ORDER_FLOOR:
            notes.append(
                f"alpha={alpha}: err {e_coarse:.1e} (truncation-dominated, "
                f"{1e-3 / max(e_coarse, 1e-300):.0f}x below tolerance; no "
                f"algebraic component, order vacuous)"
            )
            continue
        order = math.log2(e_coarse / e_fine)
        if order < 1.9:
            ok = False
        notes.append(f"alpha={alpha}: err {e_coarse:.2e}, refinement order {order:.2f}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        ok = False
        notes.append(f"runtime {elapsed:.1f}s >= 30s")
    return CriterionResult("1 eigenvalue law", ok, "; ".join(notes))


@_timed
def criterion_2_separable_dynamics() -> CriterionResult:
    """Evolved eigenmodes decay at their closed-form rates."""
    t0 = time.perf_counter()
    grid = Grid1D(10.0, 2001)
    ok = True
    worst_rate = 0.0
    worst_r2 = 1.0
    notes = []
    for alpha in (1.0, 2.0):
        for n in range(4):
            mode = EigenMode(n, alpha)
            initial = Field1D(grid, mode.profile(grid.points))
            spec = EvolveSpec(equation="similarity", t_end=1.0, alpha=alpha,
                              dt=1e-3, scheme="trapezoidal")
            _, norms, _ = evolve(initial, spec)
            rate, r2 = decay_rate_fit(norms.times, norms.l2)
            lam = lambda_n(n, alpha)
            err = abs(rate - lam)
            worst_rate = max(worst_rate, err)
            if err >= 1e-3:
                ok = False
                notes.append(f"alpha={alpha} n={n}: rate error {err:.2e}")
            # r^2 is undefined when there is nothing to decay (lambda = 0):
            # the log-amplitude variation is then at rounding level
            y = -np.log(norms.l2[norms.times >= 0.05])
            if np.max(y) - np.min(y) >= 1e-4:
                worst_r2 = min(worst_r2, r2)
                if r2 <= 0.9999:
                    ok = False
                    notes.append(f"alpha={alpha} n={n}: r2 {r2:.6f}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60.0:
        ok = False
        notes.append(f"runtime {elapsed:.1f}s >= 60s")
    detail = f"max rate error {worst_rate:.2e}, min meaningful r2 {worst_r2:.6f}"
    if notes:
        detail += "; " + "; ".join(notes)
    return CriterionResult("2 separable dynamics", ok, detail)


@_timed
def criterion_3_steady_solution() -> CriterionResult:
    """Residual-verified steady profile; evolution leaves it unchanged."""
    grid_res = Grid1D(8.0, 401)
    ok = True
    notes = []
    for alpha in (0.5, 1.0, 2.0):
        r = pde_residual_steady(alpha, grid_res)
        if r >= 1e-7:
            ok = False
        notes.append(f"residual(alpha={alpha})={r:.1e}")
    # evolution check: restricted to the orders with Gaussian two-sided
    # decay (alpha=2 gives D_{-1/2}, algebraic on one side, incompatible
    # with Dirichlet-zero truncation)
    grid = Grid1D(10.0, 2001)
    for alpha in (0.5, 1.0):
        profile = SteadyProfile(alpha=alpha)
        values = profile.omega(grid.points)
        values[0] = values[-1] = 0.0
        spec = EvolveSpec(equation="similarity", t_end=2.0, alpha=alpha,
                          dt=1e-3, scheme="trapezoidal")
        final, _, _ = evolve(Field1D(grid, values), spec)
        drift = float(np.max(np.abs(final.values - values)))
        if drift >= 5e-4:
            ok = False
        notes.append(f"drift(alpha={alpha})={drift:.1e}")
    return CriterionResult("3 steady solution", ok, "; ".join(notes))


@_timed
def criterion_4_transform_chain() -> CriterionResult:
    """Cross-check picks exactly one alpha(c1) candidate, consistently."""
    ok = True
    notes = []
    winners = set()
    for num_points in (2001, 1001):
        for n in (0, 1):
            rep = cross_check_transform(-0.5, -1.0, 1.0, n, 1.0, num_points=num_points)
            win_err = rep.errors[rep.winner]
            lose_err = max(v for k, v in rep.errors.items() if k != rep.winner)
            winners.add(rep.winner)
            if num_points == 2001 and win_err >= 5e-3:
                ok = False
                notes.append(f"N={num_points} n={n}: winner error {win_err:.2e} >= 5e-3")
            if lose_err < 10.0 * win_err:
                ok = False
                notes.append(f"N={num_points} n={n}: separation {lose_err / win_err:.1f}x < 10x")
            notes.append(f"N={num_points} n={n}: {rep.winner} err {win_err:.1e} vs {lose_err:.1e}")
    if len(winners) != 1:
        ok = False
        notes.append(f"inconsistent winners: {winners}")
    return CriterionResult("4 transform chain", ok, "; ".join(notes))


@_timed
def criterion_5_alpha1_reduction() -> CriterionResult:
    """alpha = 1 recovers the constant-strain special case."""
    ok = all(lambda_n(n, 1.0) == float(n) for n in range(11))
    notes = ["lambda_n = n exactly" if ok else "lambda_n != n"]
    xi = np.linspace(-6.0, 6.0, 401)
    h0 = EigenMode(0, 1.0).profile(xi)
    gauss = np.exp(-0.5 * xi * xi)
    e_mode = float(np.max(np.abs(h0 - gauss)))
    if e_mode >= 1e-12:
        ok = False
    notes.append(f"|h0 - exp(-xi^2/2)| = {e_mode:.1e}")
    steady = SteadyProfile(alpha=1.0).omega(xi)
    e_steady = float(np.max(np.abs(steady - h0)))
    if e_steady >= 1e-10:
        ok = False
    notes.append(f"|steady - h0| = {e_steady:.1e}")
    return CriterionResult("5 alpha=1 reduction", ok, "; ".join(notes))


@_timed
def criterion_6_special_functions() -> CriterionResult:
    """D_nu recurrence, integer reduction, and Weber residual checks."""
    t0 = time.perf_counter()
    ok = True
    notes = []

    # recurrence D_{nu+1} - z D_nu + nu D_{nu-1} = 0; residual normalized by
    # the local term scale (capped below at 1), since absolute 1e-9 is not
    # representable where |D| ~ 1e8 on the growing side
    worst = 0.0
    zs = np.linspace(-8.0, 8.0, 33)
    for nu in np.linspace(-1.5, 3.5, 11):
        dm1 = parabolic_cylinder_d(nu - 1.0, zs)
        d0 = parabolic_cylinder_d(nu, zs)
        dp1 = parabolic_cylinder_d(nu + 1.0, zs)
        scale = np.maximum(1.0, np.abs(dp1) + np.abs(zs * d0) + np.abs(nu * dm1))
        worst = max(worst, float(np.max(np.abs(dp1 - zs * d0 + nu * dm1) / scale)))
    if worst >= 1e-9:
        ok = False
    notes.append(f"recurrence residual {worst:.1e}")

    worst = 0.0
    zs = np.linspace(-6.0, 6.0, 241)
    for n in range(7):
        ref = 2.0 ** (-n / 2.0) * np.exp(-0.25 * zs * zs) * hermite(n, zs / math.sqrt(2.0))
        worst = max(worst, float(np.max(np.abs(parabolic_cylinder_d(float(n), zs) - ref))))
    if worst >= 1e-10:
        ok = False
    notes.append(f"integer reduction {worst:.1e}")

    # Weber residual at 1000 (nu, z) samples via 6th-order FD of the evaluator
    rng = np.random.default_rng(20240817)
    nus = rng.uniform(-2.0, 4.0, 40)
    worst = 0.0
    fd = 0.02
    offsets = np.arange(-3, 4) * fd
    d2_stencil = np.array([1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90])
    for nu in nus:
        z0 = rng.uniform(-7.5, 7.5, 25)
        pts = (z0[:, None] + offsets[None, :]).ravel()
        vals = parabolic_cylinder_d(nu, pts).reshape(len(z0), 7)
        u = vals[:, 3]
        upp = vals @ d2_stencil / (fd * fd)
        res = upp + (nu + 0.5 - 0.25 * z0 * z0) * u
        scale = np.abs(u) + np.abs(upp) + 1.0
        worst = max(worst, float(np.max(np.abs(res) / scale)))
    if worst >= 1e-8:
        ok = False
    notes.append(f"Weber residual {worst:.1e} (1000 samples)")

    elapsed = time.perf_counter() - t0
    if elapsed >= 10.0:
        ok = False
        notes.append(f"runtime {elapsed:.1f}s >= 10s")
    return CriterionResult("6 special functions", ok, "; ".join(notes))


@_timed
def criterion_7_solver_orders() -> CriterionResult:
    """Measured discretization orders plus linearity/parity invariants."""
    ok = True
    notes = []
    sp = spatial_order()
    if min(sp) < 1.9:
        ok = False
    notes.append("spatial orders " + ", ".join(f"{o:.2f}" for o in sp))
    tp = temporal_order()
    if min(tp) < 3.8:
        ok = False
    notes.append("temporal orders " + ", ".join(f"{o:.2f}" for o in tp))

    grid = Grid1D(10.0, 501)
    xi = grid.points
    u = np.exp(-0.5 * xi * xi) * (1.0 + 0.3 * np.sin(xi))
    u[0] = u[-1] = 0.0
    v = xi * np.exp(-0.4 * xi * xi)
    v[0] = v[-1] = 0.0
    spec = EvolveSpec(equation="similarity", t_end=0.3, alpha=1.0, dt=1e-4, scheme="rk4")
    eu = evolve(Field1D(grid, u), spec)[0].values
    ev = evolve(Field1D(grid, v), spec)[0].values
    ew = evolve(Field1D(grid, 2.0 * u + 3.0 * v), spec)[0].values
    lin = float(np.max(np.abs(ew - 2.0 * eu - 3.0 * ev)) / np.max(np.abs(ew)))
    if lin >= 1e-12:
        ok = False
    notes.append(f"linearity {lin:.1e}")

    even = evolve(Field1D(grid, np.exp(-0.5 * xi * xi) - math.exp(-50.0)), spec)[0].values
    odd = ev
    asym = max(
        float(np.max(np.abs(even - even[::-1]))),
        float(np.max(np.abs(odd + odd[::-1]))),
    )
    if asym >= 1e-12:
        ok = False
    notes.append(f"parity asymmetry {asym:.1e}")
    return CriterionResult("7 solver orders", ok, "; ".join(notes))


@_timed
def criterion_8_discrepancy_ledger() -> CriterionResult:
    """The report carries exactly the four corrections, each with evidence."""
    items = build_discrepancy_report(num_points=1001)
    names = [it.item for it in items]
    expected = ["AlphaMapping", "SteadyArgScaling", "EigenGaussianExponent", "WPrefactor"]
    ok = sorted(names) == sorted(expected)
    notes = [f"items: {names}"]
    for it in items:
        if it.item == "AlphaMapping":
            ratio = it.oracle_evidence["min_loser_to_winner_ratio"]
            if ratio < 10.0:
                ok = False
            notes.append(f"AlphaMapping separation {ratio:.0f}x")
        else:
            ratio = it.oracle_evidence["ratio"]
            if ratio < 1e4:
                ok = False
            notes.append(f"{it.item} separation {ratio:.1e}x")
    return CriterionResult("8 discrepancy ledger", ok, "; ".join(notes))


CRITERIA = [
    criterion_1_eigenvalue_law,
    criterion_2_separable_dynamics,
    criterion_3_steady_solution,
    criterion_4_transform_chain,
    criterion_5_alpha1_reduction,
    criterion_6_special_functions,
    criterion_7_solver_orders,
    criterion_8_discrepancy_ledger,
]


def run_all(threads: int = 1):
    """Run every criterion, optionally dispatching across worker threads."""
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda fn: fn(), CRITERIA))
    return [fn() for fn in CRITERIA]
