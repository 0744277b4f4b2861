"""Exact integer linear algebra on intersection forms.

Everything here is integer-only: determinants by fraction-free (Bareiss)
elimination, definiteness by leading principal minors, and a Smith normal
form that carries its unimodular transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from plumbkit.errors import PreconditionError
from plumbkit.graph import PlumbingGraph, derived, intersection_matrix

__all__ = [
    "SmithDecomposition",
    "HomologyDescriptor",
    "leading_minors",
    "is_negative_definite",
    "determinant",
    "smith_normal_form",
    "matmul",
    "homology",
    "graph_is_negative_definite",
]

Matrix = Sequence[Sequence[int]]


def _rows(m) -> list[list[int]]:
    rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    return rows


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def leading_minors(m: Matrix) -> list[int]:
    """Determinants of the leading k-by-k submatrices, k = 1..n.

    Bareiss elimination without pivoting produces these as its successive
    pivots.  Once a pivot vanishes the remaining minors are computed
    directly.
    """
    orig = _rows(m)
    a = [r[:] for r in orig]
    n = len(a)
    out = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        out.append(piv)
        if piv == 0:
            out.extend(determinant([r[: j + 1] for r in orig[: j + 1]]) for j in range(k + 1, n))
            return out
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = piv
    return out


def is_negative_definite(m: Matrix) -> bool:
    """Sylvester's criterion: ``(-1)^k * det(M_k) > 0`` for every leading minor."""
    a = _rows(m)
    n = len(a)
    if n == 0:
        return False
    prev = 1
    for k in range(n):
        piv = a[k][k]
        # piv is det(M_{k+1}); the sign must be (-1)^(k+1)
        if piv == 0 or (piv > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = piv
    return True


def graph_is_negative_definite(g: PlumbingGraph) -> bool:
    """Whether ``g`` is nonempty and its intersection form is negative definite (memoized)."""
    return derived(g, "negdef", lambda: bool(g.vertices) and is_negative_definite(intersection_matrix(g)))


def determinant(m: Matrix) -> int:
    a = _rows(m)
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == diag(d)`` with ``U``, ``V`` unimodular and ``d[i] | d[i+1]``."""

    d: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)

    def diagonal(self) -> list[list[int]]:
        n = len(self.d)
        return [[self.d[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Matrix) -> SmithDecomposition:
    """Smith normal form of a square integer matrix, with transforms.

    Pivot rule: at each stage the entry of least nonzero absolute value in
    the trailing block, first in row-major order.  Deterministic for a fixed
    input.
    """
    a = _rows(m)
    n = len(a)
    U = _identity(n)
    V = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        for r in a:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = a[i][t] // piv
                if q:
                    add_row(t, i, q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // piv
                if q:
                    add_col(t, j, q)
                if a[t][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t and reduce again
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
            U[t] = [x + y for x, y in zip(U[t], U[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    d = tuple(a[i][i] for i in range(n))
    return SmithDecomposition(d, tuple(map(tuple, U)), tuple(map(tuple, V)))


@dataclass(frozen=True)
class HomologyDescriptor:
    """First homology ``Z^free_rank + sum Z/t`` of a plumbed manifold."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return prod(self.torsion) if self.is_finite else None

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(g: PlumbingGraph) -> HomologyDescriptor:
    """H_1 of the plumbed manifold: free part ``2*sum(g_i) + b_1 + corank``, torsion from Smith form."""
    if not g.is_connected:
        raise PreconditionError("homology needs a connected graph")
    snf = smith_normal_form(intersection_matrix(g))
    corank = sum(1 for x in snf.d if x == 0)
    free = 2 * sum(g.genera) + g.first_betti + corank
    return HomologyDescriptor(free, tuple(x for x in snf.d if x > 1))
