"""Kernel dispatch: compiled extension when available, numpy otherwise.

Set ``HYPGRAFT_PURE_PYTHON=1`` to force the numpy versions.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("HYPGRAFT_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

mvc_map = _impl.mvc_map
directed_hausdorff = _impl.directed_hausdorff

__all__ = ["BACKEND", "mvc_map", "directed_hausdorff"]
