"""gyresw: finite-volume reduced-gravity shallow-water solver.

Conservation-form shallow-water equations on a beta plane, solved with a
fractional-step scheme: a wave-propagation finite volume method for the
hyperbolic part and a two-stage Runge-Kutta step for Coriolis, viscosity,
and forcing.  Includes a manufactured-solution verification harness, the
wind-driven double-gyre basin experiment, and one-way coupled passive
tracer transport.
"""

from .kernels import ACTIVE_BACKEND

__version__ = "0.1.0"

__all__ = ["ACTIVE_BACKEND", "__version__"]
