"""Backend dispatch for the hot per-face flux kernel.

Two interchangeable implementations exist: a numba-jitted face loop and a
vectorized pure-numpy path. Selection happens once at import time via the
environment variable FVEULER_BACKEND:

    FVEULER_BACKEND=numba   require the jitted kernels (error if unavailable)
    FVEULER_BACKEND=numpy   force the pure-numpy path
    FVEULER_BACKEND=auto    numba when importable, numpy otherwise (default)

Both backends expose `face_fluxes` with identical signatures and agree to
tight tolerance; the test suite cross-checks them and
benchmarks/bench_backends.py compares their throughput.
"""

import os

from . import numpy_backend

_choice = os.environ.get("FVEULER_BACKEND", "auto").strip().lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"FVEULER_BACKEND must be one of auto|numba|numpy, got {_choice!r}"
    )

if _choice == "numpy":
    _active = numpy_backend
    _name = "numpy"
else:
    try:
        from . import numba_backend

        _active = numba_backend
        _name = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        _active = numpy_backend
        _name = "numpy"

face_fluxes = _active.face_fluxes

# strategy codes shared by both backends
KIND_ROE = 0
KIND_ROE_HARTEN = 1
KIND_ROE_HLLE = 2
KIND_FLEISCHMANN = 3
KIND_FLEISCHMANN_LINEAR = 4
KIND_BLEND_GEOM = 5
KIND_BLEND_ARITH = 6

BETA_CONSTANT = 0
BETA_PRESSURE_SENSOR = 1


def backend_name() -> str:
    """Name of the backend selected at import time."""
    return _name


def get_backend(name: str):
    """Fetch a specific backend module by name (for benchmarks/tests)."""
    if name == "numpy":
        return numpy_backend
    if name == "numba":
        from . import numba_backend

        return numba_backend
    raise ValueError(f"unknown backend {name!r}")
