"""Kernel backend selection.

The compiled extension is preferred when importable; the pure NumPy
implementation is the fallback. Set ``PRODCSS_BACKEND=pure`` (or
``cython``) to force a choice.
"""

from __future__ import annotations

import os

from ._bitpack import pack_rows, pack_vector, unpack_rows, words_per_row


def load_backend(name: str):
    """Import a kernel backend module by name ('cython' or 'pure')."""
    if name == "cython":
        from . import _core

        return _core
    if name == "pure":
        from . import _pure

        return _pure
    raise ValueError(f"unknown kernel backend: {name!r}")


_forced = os.environ.get("PRODCSS_BACKEND", "").strip().lower()
if _forced:
    _impl = load_backend(_forced)
else:
    try:
        from . import _core as _impl
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND_NAME
rref_in_place = _impl.rref_in_place
solve_bits = _impl.solve_bits
bp_run = _impl.bp_run

__all__ = [
    "BACKEND",
    "bp_run",
    "load_backend",
    "pack_rows",
    "pack_vector",
    "rref_in_place",
    "solve_bits",
    "unpack_rows",
    "words_per_row",
]
