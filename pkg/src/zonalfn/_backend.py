"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python twin. ``use_backend`` switches explicitly (tests, benchmarks).
"""

from __future__ import annotations

import contextlib

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

HAVE_COMPILED = _compiled is not None
_active = _compiled if HAVE_COMPILED else _kernels_py


def active() -> str:
    return "compiled" if _active is _compiled and HAVE_COMPILED else "python"


def kernels():
    return _active


def set_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _kernels_py
    elif name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily switch the kernel backend."""
    global _active
    saved = _active
    set_backend(name)
    try:
        yield
    finally:
        _active = saved
