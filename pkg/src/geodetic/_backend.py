"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over. ``use_backend`` switches explicitly (tests, benchmarks).
"""

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _pykernels


def available_backends():
    return ("cython", "python") if _compiled is not None else ("python",)


def backend_name():
    return "cython" if _active is _compiled else "python"


def use_backend(name):
    """Select ``"cython"`` or ``"python"``; returns the previous name."""
    global _active
    previous = backend_name()
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        _active = _compiled
    elif name == "python":
        _active = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def bfs(indptr, indices, root):
    return _active.bfs(indptr, indices, root)


def all_pairs(indptr, indices):
    return _active.all_pairs(indptr, indices)
