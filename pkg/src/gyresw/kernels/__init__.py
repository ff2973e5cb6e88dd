"""Kernel backend selection.

The hot stencil loops exist twice: a compiled Cython extension
(``gyresw.kernels._core``) and a pure-numpy fallback (``pykernels``).
The backend is chosen once at import time; set ``GYRESW_KERNEL`` to
``cython``, ``python``, or ``auto`` (default) to override.  ``cython``
raises if the extension is missing instead of silently falling back.
"""

import importlib
import os

from . import pykernels

_requested = os.environ.get("GYRESW_KERNEL", "auto").lower()

_core = None
if _requested in ("auto", "cython"):
    try:
        _core = importlib.import_module("._core", __name__)
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "GYRESW_KERNEL=cython but the compiled extension is not "
                "built; run `pip install -e . --no-build-isolation`"
            )
elif _requested != "python":
    raise ValueError(f"GYRESW_KERNEL must be auto/cython/python, got {_requested!r}")

ACTIVE_BACKEND = "cython" if _core is not None else "python"

step_hyperbolic = _core.step_hyperbolic if _core is not None else pykernels.step_hyperbolic
step_tracer = _core.step_tracer if _core is not None else pykernels.step_tracer

LIMITER_IDS = pykernels.LIMITER_IDS


def get_backend(name="active"):
    """Return (step_hyperbolic, step_tracer) for a named backend."""
    if name in ("active", ACTIVE_BACKEND):
        return step_hyperbolic, step_tracer
    if name == "python":
        return pykernels.step_hyperbolic, pykernels.step_tracer
    if name == "cython":
        if _core is None:
            raise ImportError("compiled kernel extension not available")
        return _core.step_hyperbolic, _core.step_tracer
    raise ValueError(f"unknown backend {name!r}")
