"""Backend selection for the integer kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise, or
when ``PLUMBKIT_PURE`` is set in the environment, the pure-Python module is
used.  Inputs whose magnitudes could overflow 64-bit arithmetic are always
sent to the pure module.
"""

from __future__ import annotations

import os

from plumbkit import _pure
from plumbkit._pure import LauferDiverged

_fast = None
if not os.environ.get("PLUMBKIT_PURE"):
    try:
        from plumbkit import _speedups as _fast
    except ImportError:  # extension not built
        _fast = None

BACKEND = "compiled" if _fast is not None else "pure"

# keeps every intermediate sum well inside a signed 64-bit word
_SAFE = 1 << 30

__all__ = ["BACKEND", "LauferDiverged", "laufer", "min_cycle_search"]


def _fits(euler, mults, n_extra=0):
    return (
        len(euler) < 4096
        and all(-_SAFE < x < _SAFE for x in euler)
        and all(0 <= x < _SAFE for x in mults)
        and n_extra < _SAFE
    )


def laufer(euler, offsets, nbrs, mults, order=None):
    if _fast is not None and _fits(euler, mults):
        try:
            return _fast.laufer(euler, offsets, nbrs, mults, order)
        except OverflowError:
            pass
    return _pure.laufer(euler, offsets, nbrs, mults, order)


def min_cycle_search(euler, offsets, nbrs, mults, bound):
    # the candidate count is at most (bound + 1) ** n
    if _fast is not None and _fits(euler, mults, bound) and (bound + 1) ** len(euler) < (1 << 62):
        return _fast.min_cycle_search(euler, offsets, nbrs, mults, bound)
    return _pure.min_cycle_search(euler, offsets, nbrs, mults, bound)
