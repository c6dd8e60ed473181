"""Time-dependent strain-rate models and the similarity coordinate frame.

Two closed-form strain families are supported: a constant rate, and the
rational family gamma(t) = -1/(2*c1*t + c2) obtained by closing
d(gamma)/dt = 2*c1*gamma^2.  The similarity frame maps physical (x, t) to
dimensionless (xi, tau) via xi = sqrt(gamma(t)/nu) * x and
tau = integral of gamma from 0 to t.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import HorizonError


@dataclass(frozen=True)
class StrainModel:
    """Externally imposed strain rate gamma(t).

    kind is "constant" (gamma(t) = gamma0 > 0) or "rational"
    (gamma(t) = -1/(2*c1*t + c2), requiring c2 < 0 so gamma(0) > 0).
    """

    kind: str
    gamma0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0

    def __post_init__(self):
        if self.kind == "constant":
            if not self.gamma0 > 0:
                raise ValueError(f"constant strain requires gamma0 > 0, got {self.gamma0}")
        elif self.kind == "rational":
            if not self.c2 < 0:
                raise ValueError(f"rational strain requires c2 < 0 (gamma(0) > 0), got c2={self.c2}")
        else:
            raise ValueError(f"unknown strain kind {self.kind!r}")

    @classmethod
    def constant(cls, gamma0: float) -> "StrainModel":
        return cls(kind="constant", gamma0=float(gamma0))

    @classmethod
    def rational(cls, c1: float, c2: float) -> "StrainModel":
        return cls(kind="rational", c1=float(c1), c2=float(c2))

    def horizon(self) -> float:
        """Largest time up to which gamma(t) stays positive and finite.

        The rational denominator 2*c1*t + c2 starts negative; it reaches
        zero at t = -c2/(2*c1) when c1 > 0, else never for t >= 0.
        """
        if self.kind == "constant" or self.c1 <= 0:
            return math.inf
        return -self.c2 / (2.0 * self.c1)

    def _check_time(self, t: float) -> None:
        if t < 0 or t >= self.horizon():
            raise HorizonError(t, self.horizon())

    def gamma_at(self, t: float) -> float:
        """Strain rate gamma(t); raises HorizonError outside [0, horizon)."""
        self._check_time(t)
        if self.kind == "constant":
            return self.gamma0
        return -1.0 / (2.0 * self.c1 * t + self.c2)

    def tau_of(self, t: float) -> float:
        """Exact antiderivative tau(t) = integral_0^t gamma(t') dt'."""
        self._check_time(t)
        if self.kind == "constant":
            return self.gamma0 * t
        if self.c1 == 0.0:
            return -t / self.c2
        # log1p keeps full precision when 2*c1*t is tiny relative to c2
        return -math.log1p(2.0 * self.c1 * t / self.c2) / (2.0 * self.c1)

    def alpha(self) -> float:
        """Coefficient of the stretching term in the similarity equation.

        Substituting the rational closure into the transformed vorticity
        equation gives alpha = 1 - c1; the cross-check oracle in
        :mod:`burgersvortex.verify` confirms this mapping against the other
        printed candidate 1 - 2*c1 (see the discrepancy report).
        """
        a = 1.0 if self.kind == "constant" else 1.0 - self.c1
        if a <= 0:
            warnings.warn(
                f"alpha = {a} <= 0: bounded eigenmodes are lost for this strain model",
                RuntimeWarning,
                stacklevel=2,
            )
        return a


@dataclass(frozen=True)
class SimilarityFrame:
    """The (xi, tau) <-> (x, t) change of coordinates for a given viscosity."""

    strain: StrainModel
    nu: float

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError(f"viscosity must be positive, got {self.nu}")

    def xi_of(self, x, t: float):
        """xi = sqrt(gamma(t)/nu) * x; accepts scalar or array x."""
        return math.sqrt(self.strain.gamma_at(t) / self.nu) * x

    def x_of(self, xi, t: float):
        """Inverse map x = sqrt(nu/gamma(t)) * xi."""
        return math.sqrt(self.nu / self.strain.gamma_at(t)) * xi

    def tau_of(self, t: float) -> float:
        return self.strain.tau_of(t)
