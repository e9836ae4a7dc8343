"""Projection kernel selection.

The compiled (Cython) kernel is used when available; otherwise the
numpy implementation is selected.  Set ``JORDAN2_PURE_PYTHON=1`` to
force the fallback regardless of what is installed.
"""

from __future__ import annotations

import os

from . import data
from .pykernel import PythonKernel

try:  # pragma: no cover - availability depends on the build
    from . import _sjkernel
except ImportError:  # pragma: no cover
    _sjkernel = None


class CompiledKernel(PythonKernel):
    """Cython kernel; evaluation helpers are inherited from numpy."""

    name = "compiled"

    def project(self, start, tol, max_iter=50, max_halvings=20):
        return _sjkernel.project(
            [float(v) for v in start],
            data.RES_IDX, data.RES_COEF, data.RES_EXP,
            data.JAC_IDX, data.JAC_COEF, data.JAC_EXP,
            float(tol), int(max_iter), int(max_halvings))


def get_kernel(name=None):
    """Return a kernel instance: "compiled", "python", or best available."""
    if name == "python":
        return PythonKernel()
    if name == "compiled":
        if _sjkernel is None:
            raise RuntimeError("compiled kernel is not available")
        return CompiledKernel()
    if name is not None:
        raise ValueError(f"unknown kernel {name!r}")
    if _sjkernel is not None and not os.environ.get("JORDAN2_PURE_PYTHON"):
        return CompiledKernel()
    return PythonKernel()


ACTIVE = get_kernel()
