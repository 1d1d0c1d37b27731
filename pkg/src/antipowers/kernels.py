"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``ANTIPOWER_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

_native = None
if os.environ.get("ANTIPOWER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _native
    except ImportError:
        _native = None

_active = _native if _native is not None else _pykernels

BACKEND: str = _active.BACKEND
apply_morphism = _active.apply_morphism
count_factors = _active.count_factors
first_duplicate = _active.first_duplicate
BlockIndex = _active.BlockIndex


def available_backends():
    """Map backend name -> kernel module, fallback always included."""
    found = {"python": _pykernels}
    if _native is not None:
        found["native"] = _native
    return found


def get_backend(name: str):
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
