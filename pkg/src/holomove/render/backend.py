"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set HOLOMOVE_PURE=1 to force the pure-python kernels (used by the benchmark
and for debugging); the active backend name is exposed for reports.
"""

import os

from . import _kernels_py

_impl = None


def kernels():
    """The active kernel module (functions mandelbrot/locus_g/param_fa/dyn_fa)."""
    global _impl
    if _impl is None:
        if os.environ.get("HOLOMOVE_PURE"):
            _impl = _kernels_py
        else:
            try:
                from . import _kernels as compiled
                _impl = compiled
            except ImportError:
                _impl = _kernels_py
    return _impl


def backend_name() -> str:
    return kernels().BACKEND


def force_backend(name):
    """Pin the backend for this process ("compiled", "python" or None to reset)."""
    global _impl
    if name is None:
        _impl = None
        return
    if name == "python":
        _impl = _kernels_py
    elif name == "compiled":
        from . import _kernels as compiled
        _impl = compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
