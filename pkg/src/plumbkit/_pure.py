"""Pure-Python versions of the hot integer kernels.

Both kernels take the graph in compressed adjacency form: ``euler[i]`` is the
self-intersection of vertex ``i`` and the neighbours of ``i`` are
``nbrs[offsets[i]:offsets[i + 1]]`` with edge multiplicities in the same
slice of ``mults``.  The compiled module ``_speedups`` mirrors these
signatures exactly.
"""

from __future__ import annotations

from typing import Sequence


class LauferDiverged(RuntimeError):
    pass


def laufer(
    euler: Sequence[int],
    offsets: Sequence[int],
    nbrs: Sequence[int],
    mults: Sequence[int],
    order: Sequence[int] | None = None,
    max_steps: int = 10_000_000,
) -> list[int]:
    """Laufer iteration from the all-ones divisor.

    While some vertex pairs positively with the current divisor, bump its
    coefficient by one.  ``order`` is a priority list; the first positive
    vertex in it is bumped.  Default is lowest index first.
    """
    n = len(euler)
    if order is None:
        order = range(n)
    z = [1] * n
    # pairing[i] = Z . E_i, kept up to date incrementally
    pairing = [0] * n
    for i in range(n):
        s = euler[i]
        for k in range(offsets[i], offsets[i + 1]):
            s += mults[k]
        pairing[i] = s
    steps = 0
    while True:
        for i in order:
            if pairing[i] > 0:
                break
        else:
            return z
        steps += 1
        if steps > max_steps:
            raise LauferDiverged(f"no fixed point after {max_steps} increments")
        z[i] += 1
        pairing[i] += euler[i]
        for k in range(offsets[i], offsets[i + 1]):
            pairing[nbrs[k]] += mults[k]


def min_cycle_search(
    euler: Sequence[int],
    offsets: Sequence[int],
    nbrs: Sequence[int],
    mults: Sequence[int],
    bound: int,
) -> tuple[bool, list[int], int]:
    """Scan every nonzero vector in ``[0, bound]^n`` for ``Z . E_i <= 0``.

    Returns ``(found, componentwise_min, candidate_count)``.  Vertices are
    assigned in index order; a partial assignment is cut as soon as an
    assigned vertex already pairs positively (unassigned neighbours can only
    add).  The last coordinate is never looped over: its admissible values
    form an interval that is counted in one step.
    """
    n = len(euler)
    z = [0] * n
    resid = [0] * n
    best = [bound + 1] * n
    count = 0
    last = n - 1

    def descend(k: int, nonzero: bool) -> None:
        nonlocal count
        if k == last:
            lo, hi = 0, bound
            # own constraint: resid[k] + e_k * t <= 0
            e = euler[k]
            r = resid[k]
            if e < 0:
                if r > 0:
                    lo = max(lo, (r - e - 1) // (-e))
            elif e > 0:
                if r > 0:
                    return
                hi = min(hi, (-r) // e)
            elif r > 0:
                return
            for s in range(offsets[k], offsets[k + 1]):
                j = nbrs[s]
                m = mults[s]
                if m == 0:
                    continue
                rj = resid[j]
                if rj > 0:
                    return
                hi = min(hi, (-rj) // m)
            if not nonzero:
                lo = max(lo, 1)
            if lo > hi:
                return
            count += hi - lo + 1
            for i in range(last):
                if z[i] < best[i]:
                    best[i] = z[i]
            if lo < best[last]:
                best[last] = lo
            return

        e = euler[k]
        lo_s, hi_s = offsets[k], offsets[k + 1]
        for v in range(bound + 1):
            if v:
                resid[k] += e
                for s in range(lo_s, hi_s):
                    resid[nbrs[s]] += mults[s]
            z[k] = v
            if resid[k] > 0 and e >= 0:
                break
            blocked = False
            for s in range(lo_s, hi_s):
                j = nbrs[s]
                if j < k and resid[j] > 0:
                    blocked = True
                    break
            if blocked:
                # neighbour residuals only grow with v
                break
            if resid[k] <= 0:
                descend(k + 1, nonzero or v > 0)
        # undo
        v = z[k]
        resid[k] -= e * v
        for s in range(lo_s, hi_s):
            resid[nbrs[s]] -= mults[s] * v
        z[k] = 0

    if n:
        descend(0, False)
    found = count > 0
    return found, (best if found else []), count
