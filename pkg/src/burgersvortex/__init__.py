"""Verification workbench for strained-vortex similarity solutions.

Implements the time-dependent strain family gamma(t) = -1/(2 c1 t + c2),
the similarity transform to a constant-coefficient advection-diffusion
equation, its exact steady (parabolic cylinder) and separable (Hermite)
solutions, and independent numerical oracles for all of them.
"""

from .errors import (
    AccuracyError,
    BurgersVortexError,
    ConfigError,
    HorizonError,
    InstabilityError,
)
from .solutions import (
    EigenMode,
    SeparableSolution,
    SteadyProfile,
    eigenmode,
    lambda_n,
    physical_omega,
    separable_omega,
    steady_omega,
    w_profile,
)
from .solver import EvolveSpec, Field1D, Grid1D, evolve, rhs_physical, rhs_similarity
from .special import hermite, hermite_function, parabolic_cylinder_d
from .strain import SimilarityFrame, StrainModel
from .verify import (
    CrossCheckReport,
    SpectrumReport,
    cross_check_transform,
    decay_rate_fit,
    discrete_spectrum,
    ode_residual,
    pde_residual_steady,
)

__version__ = "0.1.0"
