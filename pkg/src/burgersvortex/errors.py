"""Exception types shared across the package."""


class BurgersVortexError(Exception):
    """Base class for all package errors."""


class HorizonError(BurgersVortexError, ValueError):
    """A time outside the validity window of a strain model was requested."""

    def __init__(self, t, horizon):
        self.t = t
        self.horizon = horizon
        super().__init__(
            f"t={t!r} is outside the valid window [0, {horizon!r}) of the "
            f"strain model (gamma blows up / changes sign at t={horizon!r})"
        )


class AccuracyError(BurgersVortexError, ArithmeticError):
    """A numerical method could not reach its requested tolerance."""

    def __init__(self, message, achieved=None):
        self.achieved = achieved
        if achieved is not None:
            message = f"{message} (achieved estimate: {achieved:.3e})"
        super().__init__(message)


class InstabilityError(BurgersVortexError, ArithmeticError):
    """NaN or Inf appeared during time integration."""

    def __init__(self, step, t):
        self.step = step
        self.t = t
        super().__init__(f"non-finite field value at step {step} (t={t:.6g})")


class ConfigError(BurgersVortexError, ValueError):
    """A run configuration failed validation.

    ``path`` points at the offending field, e.g. ``strain.c2``.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
