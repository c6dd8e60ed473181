"""Closed-form solutions of the similarity vorticity equation.

The constant-coefficient equation is

    dOmega/dtau = Omega + alpha * xi * dOmega/dxi + d2Omega/dxi2

with Omega -> 0 as |xi| -> infinity.  It admits a steady profile built on
the parabolic cylinder function of order 1/alpha - 1, and a discrete family
of separable modes h_n(xi) exp(-lambda_n tau) with lambda_n = (n+1)alpha - 1
built on Hermite polynomials.

Both closed forms are implemented with scalings that zero the governing ODE
residual for every alpha > 0 (and reduce to the published constant-strain
expressions at alpha = 1):

    Omega_steady(xi) = C1 * exp(-alpha xi^2 / 4) * D_{1/alpha-1}(sqrt(alpha) xi)
    h_n(xi)          = (-1)^n * exp(-alpha xi^2 / 2) * H_n(sqrt(alpha/2) xi)

The residual oracles in :mod:`burgersvortex.verify` document why the
alternative scalings fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError
from .special import hermite_function, parabolic_cylinder_d
from .strain import SimilarityFrame

MAX_SUPERPOSITION_MODES = 64
COEFF_DROP_TOL = 1e-14


def lambda_n(n: int, alpha: float) -> float:
    """Decay rate of the n-th separable mode: (n+1)*alpha - 1, exact."""
    if n < 0 or n != int(n):
        raise ValueError(f"mode index must be a nonnegative integer, got {n}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return (n + 1) * alpha - 1.0


@dataclass(frozen=True)
class SteadyProfile:
    """Steady similarity profile C1 * exp(-a xi^2/4) * D_{1/a-1}(sqrt(a) xi)."""

    alpha: float
    c_amp: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def order(self) -> float:
        return 1.0 / self.alpha - 1.0

    def omega(self, xi):
        z = math.sqrt(self.alpha) * np.asarray(xi, dtype=float)
        val = self.c_amp * np.exp(-0.25 * self.alpha * np.asarray(xi, float) ** 2)
        return val * parabolic_cylinder_d(self.order, z)


@dataclass(frozen=True)
class EigenMode:
    """Bounded separable mode h_n(xi) = (-1)^n exp(-a xi^2/2) H_n(sqrt(a/2) xi)."""

    n: int
    alpha: float

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"mode index must be a nonnegative integer, got {self.n}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def decay_rate(self) -> float:
        return lambda_n(self.n, self.alpha)

    def profile(self, xi):
        xi = np.asarray(xi, dtype=float)
        u = math.sqrt(self.alpha / 2.0) * xi
        # exp(-a xi^2/2) H_n = exp(-u^2) H_n(u) = exp(-u^2/2) * hermite_function
        return (-1.0) ** self.n * np.exp(-0.5 * u * u) * hermite_function(self.n, u)


@dataclass(frozen=True)
class SeparableSolution:
    """Finite superposition sum_n c_n h_n(xi) exp(-lambda_n tau)."""

    modes: tuple  # of (coefficient, EigenMode)
    alpha: float = field(init=False)

    def __init__(self, modes):
        modes = tuple((float(c), m) for c, m in modes if abs(c) >= COEFF_DROP_TOL)
        if not modes:
            raise ValueError("superposition needs at least one mode with |coeff| >= 1e-14")
        if len(modes) > MAX_SUPERPOSITION_MODES:
            raise ValueError(f"superposition capped at {MAX_SUPERPOSITION_MODES} modes")
        alphas = {m.alpha for _, m in modes}
        if len(alphas) != 1:
            raise ValueError("all modes in a superposition must share alpha")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "alpha", alphas.pop())

    def omega(self, xi, tau: float):
        if tau < 0:
            raise ValueError(f"tau must be nonnegative, got {tau}")
        xi = np.asarray(xi, dtype=float)
        total = np.zeros_like(xi)
        for c, m in self.modes:
            total = total + c * math.exp(-m.decay_rate * tau) * m.profile(xi)
        return total if total.ndim else float(total)


def steady_omega(profile: SteadyProfile, xi):
    return profile.omega(xi)


def eigenmode(mode: EigenMode, xi):
    return mode.profile(xi)


def separable_omega(solution: SeparableSolution, xi, tau: float):
    return solution.omega(xi, tau)


def w_profile(profile: SteadyProfile, frame: SimilarityFrame, x: float, t: float) -> float:
    """Axial velocity W(x, t) = integral_0^x Omega(xi(x', t)) dx', W(0) = 0.

    Defined by the quadrature so that dW/dx recovers Omega exactly; the
    sqrt(gamma/nu) prefactor sometimes quoted is dimensionally inconsistent
    with that defining relation (see the discrepancy report).
    """
    scale = math.sqrt(frame.strain.gamma_at(t) / frame.nu)

    def integrand(xp):
        return float(profile.omega(scale * xp))

    val, err = quad(integrand, 0.0, x, epsabs=1e-10, epsrel=1e-11, limit=200)
    if err > max(1e-8, 1e-8 * abs(val)):
        raise AccuracyError("axial-velocity quadrature did not converge", achieved=err)
    return val


def physical_omega(solution, frame: SimilarityFrame, x, t: float):
    """Evaluate a similarity solution at physical (x, t).

    Pure coordinate relabeling: Omega_phys(x, t) = Omega(xi(x, t), tau(t)),
    with no amplitude rescaling.
    """
    xi = frame.xi_of(np.asarray(x, dtype=float), t)
    if isinstance(solution, SteadyProfile):
        return solution.omega(xi)
    if isinstance(solution, EigenMode):
        tau = frame.tau_of(t)
        return math.exp(-solution.decay_rate * tau) * solution.profile(xi)
    if isinstance(solution, SeparableSolution):
        return solution.omega(xi, frame.tau_of(t))
    raise TypeError(f"unsupported solution type {type(solution).__name__}")
