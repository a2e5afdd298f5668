"""Kernel backend selection.

The compiled extension is used when importable; set ``MULTIBID_PURE_PYTHON=1``
to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("MULTIBID_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

bellman_ford = _active.bellman_ford
mck_dp = _active.mck_dp

__all__ = ["BACKEND", "bellman_ford", "mck_dp", "python_backend", "compiled_backend"]
