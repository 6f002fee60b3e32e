"""Kernel backend selection.

The hot inner loops (hyperboloid cloud operations, the cyclic prox solver's
data sweep, the l1 prox fixed point) exist twice: a pure-numpy reference
implementation and a numba-jitted mirror. Which one the library uses is
decided once, at import time, from the environment:

    GEOPROX_BACKEND=numba   use the jitted kernels (default when numba imports)
    GEOPROX_BACKEND=numpy   force the pure-numpy reference path

Both implementations are importable directly (geoprox.kernels.reference,
geoprox.kernels.accelerated) so they can be compared and benchmarked in one
process regardless of the active selection.
"""

import os
import warnings

_ENV_VAR = "GEOPROX_BACKEND"


def _resolve() -> str:
    choice = os.environ.get(_ENV_VAR, "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:
            warnings.warn(
                "numba unavailable, falling back to the numpy kernel backend",
                RuntimeWarning, stacklevel=2)
            return "numpy"
    return choice


ACTIVE_BACKEND = _resolve()


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return ACTIVE_BACKEND
