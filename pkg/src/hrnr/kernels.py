"""Dispatch between the compiled sweep kernel and the numpy fallback.

The compiled extension is preferred when importable; set ``HRNR_PURE=1`` in
the environment (before import) or call :func:`set_backend` to force the
fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

import numpy as np

from . import _sweep_py

_BACKENDS = {"numpy": _sweep_py}
try:
    from . import _sweep_cy

    _BACKENDS["cython"] = _sweep_cy
except ImportError:
    _sweep_cy = None

_active = "numpy"
if _sweep_cy is not None and os.environ.get("HRNR_PURE") != "1":
    _active = "cython"


def backend() -> str:
    return _active


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {available_backends()}")
    _active = name


def atom_side_sweep(px, py, w, vx, vy, eps: float):
    """Bucket weighted anchor-relative points against canonical directions.

    Returns an (m, 6) float array with columns [side A, side B, forward ray,
    backward ray, anchor, unresolved]; see the kernel docstrings.
    """
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    vx = np.ascontiguousarray(vx, dtype=np.float64)
    vy = np.ascontiguousarray(vy, dtype=np.float64)
    return _BACKENDS[_active].atom_side_sweep(px, py, w, vx, vy, float(eps))
