"""Fundamental cycles and Artin's rationality test.

The fundamental cycle of a negative-definite plumbing graph is the smallest
nonzero effective divisor ``Z = sum z_i E_i`` with ``Z . E_i <= 0`` for every
vertex.  ``fundamental_cycle`` finds it by Laufer's increment iteration;
``brute_force_min_cycle`` finds it independently by scanning a coefficient
box, and is what the iteration is checked against.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from plumbkit import kernels
from plumbkit.errors import PreconditionError
from plumbkit.graph import PlumbingGraph
from plumbkit.lattice import graph_is_negative_definite

__all__ = [
    "Divisor",
    "RationalityCertificate",
    "pair",
    "self_intersection",
    "fundamental_cycle",
    "brute_force_min_cycle",
    "rationality",
    "count_min_cycle_candidates",
]


@dataclass(frozen=True)
class Divisor:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in coeffs):
            raise ValueError("divisor coefficients must be nonnegative")
        object.__setattr__(self, "coefficients", coeffs)

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self.coefficients == other.coefficients
        if isinstance(other, (tuple, list)):
            return self.coefficients == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __le__(self, other):
        return all(a <= b for a, b in zip(self, other))

    def __str__(self):
        return " ".join(map(str, self.coefficients))


def pair(z: Sequence[int], i: int, g: PlumbingGraph) -> int:
    """Intersection number ``Z . E_i``."""
    if not 0 <= i < len(g):
        raise IndexError(f"vertex index {i} out of range for {len(g)} vertices")
    if len(z) != len(g):
        raise ValueError("divisor length does not match the vertex count")
    return z[i] * g.vertices[i].euler + sum(m * z[j] for j, m in g.neighbors[i])


def self_intersection(z: Sequence[int], g: PlumbingGraph) -> int:
    return sum(z[i] * pair(z, i, g) for i in range(len(g)))


def _require_negative_definite(g: PlumbingGraph) -> None:
    if not g.is_connected:
        raise PreconditionError("graph is not connected")
    if not graph_is_negative_definite(g):
        raise PreconditionError("intersection form is not negative definite")


def fundamental_cycle(g: PlumbingGraph, order: Iterable[int] | None = None) -> Divisor:
    """Laufer's algorithm.

    Start from the all-ones divisor; while some ``Z . E_i > 0``, raise
    ``z_i`` by one.  The vertex raised is the first positive one in
    ``order`` (default: lowest index).  The fixed point does not depend on
    the order.
    """
    _require_negative_definite(g)
    euler, offsets, nbrs, mults = g.csr
    if order is not None:
        order = list(order)
        if sorted(order) != list(range(len(g))):
            raise ValueError("order must be a permutation of the vertex indices")
    z = kernels.laufer(euler, offsets, nbrs, mults, order)
    assert all(pair(z, i, g) <= 0 for i in range(len(g))), "Laufer fixed point pairs positively"
    return Divisor(tuple(z))


def _search_order(g: PlumbingGraph) -> list[int]:
    # breadth-first from vertex 0 so each vertex's neighbourhood fills in early
    seen = [False] * len(g)
    out = []
    for root in range(len(g)):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            i = queue.popleft()
            out.append(i)
            for j, _ in g.neighbors[i]:
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
    return out


def brute_force_min_cycle(g: PlumbingGraph, bound: int) -> Divisor | None:
    """Componentwise minimum of all nonzero ``Z`` in ``[0, bound]^n`` with every ``Z . E_i <= 0``.

    Every vector of the box is accounted for.  Returns ``None`` when the box
    holds no such divisor.  The minimum is checked to be a member of the set
    before it is returned.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    if not g.is_connected:
        raise PreconditionError("graph is not connected")
    perm = _search_order(g)
    where = {old: new for new, old in enumerate(perm)}
    euler = [g.vertices[i].euler for i in perm]
    offsets, nbrs, mults = [0], [], []
    for i in perm:
        for j, m in g.neighbors[i]:
            nbrs.append(where[j])
            mults.append(m)
        offsets.append(len(nbrs))
    found, best, _count = kernels.min_cycle_search(euler, offsets, nbrs, mults, bound)
    if not found:
        return None
    z = [0] * len(g)
    for new, old in enumerate(perm):
        z[old] = best[new]
    # the candidate set is closed under componentwise min, so its minimum is a candidate
    if not (any(z) and all(pair(z, i, g) <= 0 for i in range(len(g)))):
        raise AssertionError(f"componentwise minimum {z} is not itself a candidate")
    return Divisor(tuple(z))


def count_min_cycle_candidates(g: PlumbingGraph, bound: int) -> int:
    """Number of nonzero ``Z`` in ``[0, bound]^n`` with every ``Z . E_i <= 0``."""
    return kernels.min_cycle_search(*g.csr, bound)[2]


@dataclass(frozen=True)
class RationalityCertificate:
    fundamental_cycle: Divisor
    self_intersection: int
    artin_value: int
    is_rational: bool
    all_rational_curves: bool

    @property
    def arithmetic_genus(self) -> int:
        return (self.artin_value + 2) // 2


def rationality(g: PlumbingGraph) -> RationalityCertificate:
    """Artin's criterion, with the adjunction term ``z_i (2 g_i - 2 - e_i)`` kept genus-aware.

    Rational iff every vertex has genus 0 and ``Z.Z + sum z_i(2 g_i - 2 - e_i) == -2``.
    """
    z = fundamental_cycle(g)
    zz = self_intersection(z, g)
    artin = zz + sum(zi * (2 * v.genus - 2 - v.euler) for zi, v in zip(z, g.vertices))
    assert artin % 2 == 0
    all_spheres = all(v.genus == 0 for v in g.vertices)
    return RationalityCertificate(z, zz, artin, all_spheres and artin == -2, all_spheres)
