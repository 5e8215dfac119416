"""Integrator hot-loop kernels.

The compiled extension is preferred when it was built; the pure-numpy
fallback implements the identical contract. Set MOBELL_KERNEL=numpy or
MOBELL_KERNEL=cython to force a backend (the latter raises if the extension
is missing).
"""
import os

from . import np_rk4

_requested = os.environ.get("MOBELL_KERNEL", "").lower()

if _requested not in ("", "numpy", "cython"):
    raise ImportError(f"unknown MOBELL_KERNEL value {_requested!r}")

if _requested == "numpy":
    _impl = np_rk4
    KERNEL_BACKEND = "numpy"
else:
    try:
        from . import _cy_rk4 as _impl  # type: ignore[attr-defined]

        KERNEL_BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        _impl = np_rk4
        KERNEL_BACKEND = "numpy"

rk4_lindblad = _impl.rk4_lindblad


def available_backends() -> dict:
    """Name -> kernel function for every importable backend."""
    out = {"numpy": np_rk4.rk4_lindblad}
    try:
        from . import _cy_rk4  # type: ignore[attr-defined]

        out["cython"] = _cy_rk4.rk4_lindblad
    except ImportError:
        pass
    return out
