"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
kernels are the fallback.  Set SUMSETS_KERNELS=python or SUMSETS_KERNELS=c
before import to force a backend.
"""

from __future__ import annotations

import os

from . import _bitops_py

try:
    from . import _bitops as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

_PY_NAMES = {"py", "python", "pure"}
_C_NAMES = {"c", "ext", "compiled"}


def _select():
    forced = os.environ.get("SUMSETS_KERNELS", "").strip().lower()
    if not forced:
        return _compiled if _compiled is not None else _bitops_py
    if forced in _PY_NAMES:
        return _bitops_py
    if forced in _C_NAMES:
        if _compiled is None:
            raise ImportError("SUMSETS_KERNELS requested the compiled backend but it is not built")
        return _compiled
    raise ValueError(f"unknown SUMSETS_KERNELS value {forced!r}")


active = _select()


def backend_name() -> str:
    return active.NAME


def has_compiled() -> bool:
    return _compiled is not None


def available_backends() -> tuple[str, ...]:
    return ("c", "python") if _compiled is not None else ("python",)


def get_backend(name: str):
    if name in _PY_NAMES:
        return _bitops_py
    if name in _C_NAMES:
        if _compiled is None:
            raise ValueError("compiled backend is not available")
        return _compiled
    if name in {"", "auto", "active"}:
        return active
    raise ValueError(f"unknown backend {name!r}")
