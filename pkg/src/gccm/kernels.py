"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python module is used.  ``GCCM_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("GCCM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

INF = _pykernels.INF

bfs = _impl.bfs
multi_bfs = _impl.multi_bfs
eccentricities = _impl.eccentricities
marginal_gain = _impl.marginal_gain
add_center = _impl.add_center
closed_subset = _impl.closed_subset


def get_backend(name):
    """Return the kernel module named ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
