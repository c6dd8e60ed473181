"""Method-of-lines integration of the vorticity equations on a 1D grid.

Two equations are supported with homogeneous Dirichlet boundaries:

* physical coordinates:   dOmega/dt  = gamma(t) x Omega_x + gamma(t) Omega + nu Omega_xx
* similarity coordinates: dOmega/dtau = Omega + alpha xi Omega_xi + Omega_xixi

Space is discretized with 2nd-order centered differences (the flows are
diffusion-dominated at the resolved scales, so centered advection is stable
at the operated CFL numbers).  Time integration is classic RK4 with
stage-exact gamma(t) sampling, or the implicit trapezoidal rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import solve_banded
from scipy.sparse import diags
from scipy.sparse.linalg import splu

from .errors import HorizonError, InstabilityError
from .strain import StrainModel

DEFAULT_NUM_POINTS = 2001
DEFAULT_CFL_FACTOR = 0.4


@dataclass(frozen=True)
class Grid1D:
    """Uniform symmetric grid on [-half_width, half_width], odd point count."""

    half_width: float
    num_points: int = DEFAULT_NUM_POINTS

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.num_points < 3 or self.num_points % 2 == 0:
            raise ValueError(f"num_points must be an odd integer >= 3, got {self.num_points}")

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / (self.num_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.num_points)

    def refined(self) -> "Grid1D":
        """Same domain with the spacing halved."""
        return Grid1D(self.half_width, 2 * self.num_points - 1)


@dataclass
class Field1D:
    """Sampled vorticity profile on a grid."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.num_points,):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid ({self.grid.num_points},)"
            )

    @classmethod
    def from_callable(cls, grid: Grid1D, fn) -> "Field1D":
        return cls(grid, np.asarray(fn(grid.points), dtype=float))

    def copy(self) -> "Field1D":
        return Field1D(self.grid, self.values.copy())

    def l2_norm(self) -> float:
        return math.sqrt(self.grid.h * float(np.dot(self.values, self.values)))

    def linf_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class EvolveSpec:
    """What to integrate, how far, and with which scheme.

    equation is "similarity" (needs alpha) or "physical" (needs strain, nu).
    Exactly one of dt / cfl_factor sets the step policy.
    """

    equation: str
    t_end: float
    alpha: Optional[float] = None
    strain: Optional[StrainModel] = None
    nu: Optional[float] = None
    dt: Optional[float] = None
    cfl_factor: Optional[float] = None
    scheme: str = "rk4"
    record_norms_every: int = 1

    def __post_init__(self):
        if self.equation not in ("similarity", "physical"):
            raise ValueError(f"unknown equation {self.equation!r}")
        if self.scheme not in ("rk4", "trapezoidal"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not self.t_end >= 0:
            raise ValueError(f"t_end must be nonnegative, got {self.t_end}")
        if self.equation == "similarity":
            if self.alpha is None or not self.alpha > 0:
                raise ValueError("similarity equation requires alpha > 0")
        else:
            if self.strain is None or self.nu is None or not self.nu > 0:
                raise ValueError("physical equation requires a strain model and nu > 0")
            if self.t_end >= self.strain.horizon():
                raise HorizonError(self.t_end, self.strain.horizon())
        if (self.dt is None) == (self.cfl_factor is None):
            raise ValueError("exactly one of dt / cfl_factor must be given")
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.cfl_factor is not None and not 0 < self.cfl_factor <= 1:
            raise ValueError(f"cfl_factor must lie in (0, 1], got {self.cfl_factor}")


@dataclass
class NormSeries:
    """Sampled (time, L2, Linf) history of an evolution."""

    times: np.ndarray
    l2: np.ndarray
    linf: np.ndarray


def rhs_similarity(field: Field1D, alpha: float) -> Field1D:
    """Discrete RHS of the similarity equation; zero at the boundary rows."""
    u = field.values
    xi = field.grid.points
    h = field.grid.h
    out = np.zeros_like(u)
    lap = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    adv = alpha * xi[1:-1] * (u[2:] - u[:-2]) / (2.0 * h)
    out[1:-1] = u[1:-1] + adv + lap
    return Field1D(field.grid, out)


def rhs_physical(field: Field1D, gamma: float, nu: float) -> Field1D:
    """Discrete RHS of the physical-coordinate equation at strain rate gamma."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    u = field.values
    x = field.grid.points
    h = field.grid.h
    out = np.zeros_like(u)
    lap = nu * (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    adv = gamma * x[1:-1] * (u[2:] - u[:-2]) / (2.0 * h)
    out[1:-1] = adv + gamma * u[1:-1] + lap
    return Field1D(field.grid, out)


def operator_tridiagonal(grid: Grid1D, alpha: float):
    """Interior tridiagonal bands (sub, diag, super) of u + a*xi*u' + u''.

    Rows correspond to interior points; Dirichlet-zero boundaries are
    eliminated.  Used both by the implicit stepper and by the spectrum
    oracle.
    """
    xi = grid.points[1:-1]
    h = grid.h
    diag = 1.0 - 2.0 / (h * h) * np.ones_like(xi)
    sup = (1.0 / (h * h) + alpha * xi / (2.0 * h))[:-1]
    sub = (1.0 / (h * h) - alpha * xi / (2.0 * h))[1:]
    return sub, diag, sup


def _physical_bands(grid: Grid1D, gamma: float, nu: float):
    x = grid.points[1:-1]
    h = grid.h
    diag = gamma - 2.0 * nu / (h * h) * np.ones_like(x)
    sup = (nu / (h * h) + gamma * x / (2.0 * h))[:-1]
    sub = (nu / (h * h) - gamma * x / (2.0 * h))[1:]
    return sub, diag, sup


def _resolve_dt(initial: Field1D, spec: EvolveSpec) -> float:
    if spec.dt is not None:
        return spec.dt
    h = initial.grid.h
    L = initial.grid.half_width
    if spec.equation == "similarity":
        nu_eff = 1.0
        a_max = spec.alpha * L
    else:
        # gamma is monotone in t (d gamma/dt = 2 c1 gamma^2), so the extreme
        # sits at an endpoint of the time window
        g0 = spec.strain.gamma_at(0.0)
        g1 = spec.strain.gamma_at(spec.t_end) if spec.t_end > 0 else g0
        nu_eff = spec.nu
        a_max = max(g0, g1) * L
    limit = h * h / (2.0 * nu_eff)
    if a_max > 0:
        limit = min(limit, h / a_max)
    return spec.cfl_factor * limit


def _gamma_fn(spec: EvolveSpec):
    if spec.equation == "similarity":
        return None
    return spec.strain.gamma_at


def evolve(initial: Field1D, spec: EvolveSpec, snapshot_times=None):
    """Integrate the selected equation; returns (final field, norms, snapshots).

    snapshots is a list of (time, Field1D) taken at the requested times
    (rounded to the nearest step).  Norms are recorded every
    ``spec.record_norms_every`` steps plus at the final time.
    """
    bmax = max(abs(initial.values[0]), abs(initial.values[-1]))
    vmax = np.max(np.abs(initial.values))
    if vmax > 0 and bmax > 1e-10 * vmax:
        raise ValueError("initial data violates the Dirichlet-zero boundary condition")

    dt = _resolve_dt(initial, spec)
    n_steps = max(1, math.ceil(spec.t_end / dt - 1e-12)) if spec.t_end > 0 else 0
    dt = spec.t_end / n_steps if n_steps else 0.0

    snap_steps = {}
    if snapshot_times:
        for ts in snapshot_times:
            if ts < 0 or ts > spec.t_end + 1e-12:
                raise ValueError(f"snapshot time {ts} outside [0, {spec.t_end}]")
            snap_steps.setdefault(int(round(ts / dt)) if dt else 0, ts)

    u = initial.values.copy()
    u[0] = u[-1] = 0.0
    grid = initial.grid
    h = grid.h

    times, l2s, linfs = [], [], []
    snapshots = []

    def record(step, t):
        times.append(t)
        l2s.append(math.sqrt(h * float(np.dot(u, u))))
        linfs.append(float(np.max(np.abs(u))))

    def take_snapshot(step, t):
        if step in snap_steps:
            snapshots.append((t, Field1D(grid, u.copy())))

    record(0, 0.0)
    take_snapshot(0, 0.0)

    if spec.scheme == "rk4":
        stepper = _make_rk4_stepper(grid, spec)
    else:
        stepper = _make_trapezoidal_stepper(grid, spec, dt)

    for step in range(1, n_steps + 1):
        t_prev = (step - 1) * dt
        u = stepper(u, t_prev, dt)
        u[0] = u[-1] = 0.0
        if not np.all(np.isfinite(u)):
            raise InstabilityError(step, step * dt)
        t = step * dt
        if step % spec.record_norms_every == 0 or step == n_steps:
            record(step, t)
        take_snapshot(step, t)

    norms = NormSeries(np.asarray(times), np.asarray(l2s), np.asarray(linfs))
    return Field1D(grid, u), norms, snapshots


def _make_rk4_stepper(grid: Grid1D, spec: EvolveSpec):
    xi = grid.points
    h = grid.h

    if spec.equation == "similarity":
        alpha = spec.alpha

        def rhs(u, t):
            out = np.zeros_like(u)
            out[1:-1] = (
                u[1:-1]
                + alpha * xi[1:-1] * (u[2:] - u[:-2]) / (2.0 * h)
                + (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
            )
            return out

    else:
        nu = spec.nu
        gamma_at = spec.strain.gamma_at

        def rhs(u, t):
            g = gamma_at(t)
            out = np.zeros_like(u)
            out[1:-1] = (
                g * xi[1:-1] * (u[2:] - u[:-2]) / (2.0 * h)
                + g * u[1:-1]
                + nu * (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
            )
            return out

    def step(u, t, dt):
        k1 = rhs(u, t)
        k2 = rhs(u + 0.5 * dt * k1, t + 0.5 * dt)
        k3 = rhs(u + 0.5 * dt * k2, t + 0.5 * dt)
        k4 = rhs(u + dt * k3, t + dt)
        return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    return step


def _make_trapezoidal_stepper(grid: Grid1D, spec: EvolveSpec, dt: float):
    n_int = grid.num_points - 2

    if spec.equation == "similarity":
        sub, diag, sup = operator_tridiagonal(grid, spec.alpha)
        lhs = diags(
            [-0.5 * dt * sub, 1.0 - 0.5 * dt * diag, -0.5 * dt * sup],
            offsets=[-1, 0, 1],
            format="csc",
        )
        lu = splu(lhs)

        def apply_rhs(v):
            out = (1.0 + 0.5 * dt * diag) * v
            out[:-1] += 0.5 * dt * sup * v[1:]
            out[1:] += 0.5 * dt * sub * v[:-1]
            return out

        def step(u, t, dt_):
            v = u[1:-1]
            w = lu.solve(apply_rhs(v))
            out = np.zeros_like(u)
            out[1:-1] = w
            return out

        return step

    nu = spec.nu
    gamma_at = spec.strain.gamma_at

    def step(u, t, dt_):
        sub0, diag0, sup0 = _physical_bands(grid, gamma_at(t), nu)
        sub1, diag1, sup1 = _physical_bands(grid, gamma_at(t + dt_), nu)
        v = u[1:-1]
        rhs_vec = (1.0 + 0.5 * dt_ * diag0) * v
        rhs_vec[:-1] += 0.5 * dt_ * sup0 * v[1:]
        rhs_vec[1:] += 0.5 * dt_ * sub0 * v[:-1]
        ab = np.zeros((3, n_int))
        ab[0, 1:] = -0.5 * dt_ * sup1
        ab[1, :] = 1.0 - 0.5 * dt_ * diag1
        ab[2, :-1] = -0.5 * dt_ * sub1
        w = solve_banded((1, 1), ab, rhs_vec)
        out = np.zeros_like(u)
        out[1:-1] = w
        return out

    return step
