"""Exception types shared across the solver."""


class GyreswError(Exception):
    """Base class for solver errors."""


class ConfigError(GyreswError):
    """Invalid run configuration."""


class PositivityError(GyreswError):
    """Water depth dropped to or below the positivity threshold."""


class CFLError(GyreswError):
    """A hyperbolic step was attempted with Courant number > 1."""


class InstabilityError(GyreswError):
    """NaN or runaway growth detected in the solution."""
