"""Seifert invariants, graph shape, pi_1 finiteness and the JSJ skeleton.

Legs of a star-shaped graph are read from the center outwards.  A leg with
weights ``(a_1, ..., a_k)`` is the negative continued fraction
``s = a_1 - 1/(a_2 - 1/(... - 1/a_k))`` and contributes the exceptional
fiber ``r = -1/s``.  With this convention the leg ``[-2, -2]`` gives
``s = -3/2`` and ``r = 2/3``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from plumbkit.errors import PreconditionError
from plumbkit.graph import PlumbingGraph, derived
from plumbkit.lattice import graph_is_negative_definite

__all__ = [
    "Tri",
    "Pi1",
    "ContinuedFractionChain",
    "GraphShape",
    "SeifertData",
    "JsjSkeleton",
    "negative_cf",
    "cf_eval",
    "classify_shape",
    "seifert_data",
    "orbifold_euler",
    "pi1_is_finite",
    "jsj_skeleton",
    "is_atoroidal",
]


class Tri(str, enum.Enum):
    """Three-valued verdict.  Not usable as a bool on purpose."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __bool__(self):
        raise TypeError("Tri has no truth value; compare against Tri.TRUE / Tri.FALSE")

    @classmethod
    def of(cls, flag: bool) -> "Tri":
        return cls.TRUE if flag else cls.FALSE

    def __str__(self):
        return self.value


class Pi1(str, enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


# -- continued fractions ------------------------------------------------------


@dataclass(frozen=True)
class ContinuedFractionChain:
    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        if not terms:
            raise ValueError("continued fraction chain must be nonempty")
        if any(t > -2 for t in terms):
            raise ValueError(f"chain terms must all be <= -2, got {terms}")
        object.__setattr__(self, "terms", terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


def _eval_terms(terms: Sequence[int]) -> Fraction:
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if value == 0:
            raise ZeroDivisionError(f"continued fraction {list(terms)} passes through 0")
        value = a - 1 / value
    return value


def cf_eval(chain: ContinuedFractionChain | Sequence[int]) -> Fraction:
    """Value of ``a_1 - 1/(a_2 - 1/(... - 1/a_k))``."""
    terms = chain.terms if isinstance(chain, ContinuedFractionChain) else tuple(chain)
    if not terms:
        raise ValueError("empty chain")
    return _eval_terms(terms)


def negative_cf(r: Fraction | int) -> ContinuedFractionChain:
    """The unique expansion of ``r < -1`` with every term ``<= -2``."""
    r = Fraction(r)
    if r >= -1:
        raise ValueError(f"negative continued fraction needs r < -1, got {r}")
    terms = []
    while True:
        a = math.floor(r)
        terms.append(a)
        if r == a:
            break
        r = -1 / (r - a)
    assert all(t <= -2 for t in terms)
    return ContinuedFractionChain(tuple(terms))


# -- shape ----------------------------------------------------------------------


@dataclass(frozen=True)
class GraphShape:
    kind: str  # single-vertex | chain | star | multi-node | cyclic
    center: str | None = None
    legs: tuple[tuple[str, ...], ...] = ()
    nodes: tuple[str, ...] = ()


def _nodes(g: PlumbingGraph) -> list[int]:
    return [i for i, v in enumerate(g.vertices) if g.degree(i) >= 3 or v.genus > 0]


def _walk_leg(g: PlumbingGraph, start: int, came_from: int) -> list[int]:
    """Follow degree-2 vertices away from ``came_from`` until a leaf or a node."""
    path = [start]
    prev, cur = came_from, start
    while g.degree(cur) == 2 and g.vertices[cur].genus == 0:
        nxt = [j for j, _ in g.neighbors[cur] if j != prev]
        prev, cur = cur, nxt[0]
        path.append(cur)
    return path


def classify_shape(g: PlumbingGraph) -> GraphShape:
    if not g.is_connected:
        raise PreconditionError("graph is not connected")
    return derived(g, "shape", lambda: _classify(g))


def _classify(g: PlumbingGraph) -> GraphShape:
    ids = g.ids
    nodes = _nodes(g)
    node_ids = tuple(ids[i] for i in nodes)
    n = len(g)
    if n == 1:
        return GraphShape("single-vertex", center=ids[0], nodes=node_ids)
    if not g.is_tree:
        return GraphShape("cyclic", nodes=node_ids)
    if not nodes:
        return GraphShape("chain", center=ids[0], legs=_chain_legs(g, 0), nodes=())
    if len(nodes) == 1 and g.vertices[nodes[0]].genus == 0:
        c = nodes[0]
        legs = tuple(tuple(ids[k] for k in _walk_leg(g, j, c)) for j, _ in g.neighbors[c])
        return GraphShape("star", center=ids[c], legs=legs, nodes=node_ids)
    return GraphShape("multi-node", nodes=node_ids)


def _chain_legs(g: PlumbingGraph, c: int) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(g.ids[k] for k in _walk_leg(g, j, c)) for j, _ in g.neighbors[c])


# -- Seifert invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class SeifertData:
    """Normalized invariants ``(e0; r_1, ..., r_k)`` over a base of genus ``base_genus``.

    Each ``r_i`` lies in ``(0, 1)``; they are kept sorted.
    """

    e0: int
    exceptional: tuple[Fraction, ...] = ()
    base_genus: int = 0

    def __post_init__(self):
        rs = tuple(sorted(Fraction(r) for r in self.exceptional))
        if any(not 0 < r < 1 for r in rs):
            raise ValueError(f"exceptional invariants must lie in (0, 1), got {rs}")
        object.__setattr__(self, "exceptional", rs)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(r.denominator for r in self.exceptional)

    def __str__(self):
        body = ", ".join(str(r) for r in self.exceptional)
        genus = f" base genus {self.base_genus}" if self.base_genus else ""
        return f"({self.e0}; {body}){genus}" if body else f"({self.e0}){genus}"


def _normalize(e0: int, raw: Sequence[Fraction], base_genus: int = 0) -> SeifertData:
    """Move integer parts of unnormalized invariants into ``e0``; drop integral ones."""
    kept = []
    for r in raw:
        k = math.floor(r)
        e0 += k
        r -= k
        if r:
            kept.append(r)
    return SeifertData(e0, tuple(kept), base_genus)


def seifert_data(g: PlumbingGraph) -> SeifertData:
    """Seifert invariants of a star, chain or single-vertex graph."""
    return derived(g, "seifert", lambda: _seifert(g))


def _seifert(g: PlumbingGraph) -> SeifertData:
    shape = classify_shape(g)
    if shape.kind == "single-vertex":
        v = g.vertices[0]
        return SeifertData(v.euler, (), v.genus)
    if shape.kind not in ("star", "chain"):
        raise PreconditionError(f"Seifert invariants need a star, chain or single vertex; graph is {shape.kind}")
    c = g.index[shape.center]
    raw = []
    for leg in shape.legs:
        try:
            s = _eval_terms([g.vertices[g.index[v]].euler for v in leg])
        except ZeroDivisionError:
            s = 0
        if s == 0:
            raise PreconditionError(f"leg {list(leg)} evaluates to 0; not a Seifert fibration presentation")
        raw.append(-1 / s)
    return _normalize(g.vertices[c].euler, raw)


def orbifold_euler(s: SeifertData) -> Fraction:
    return s.e0 + sum(s.exceptional, Fraction(0))


def _require_negative_definite(g: PlumbingGraph) -> None:
    if not g.is_connected:
        raise PreconditionError("graph is not connected")
    if not graph_is_negative_definite(g):
        raise PreconditionError("intersection form is not negative definite")


def pi1_is_finite(g: PlumbingGraph) -> Pi1:
    """Finiteness of the fundamental group of the plumbed manifold.

    Positive genus, several nodes or a cycle in the graph give an infinite
    group.  Lens-type graphs are finite.  A Seifert manifold over the sphere
    with three exceptional fibers of multiplicities ``a, b, c`` is finite
    exactly when ``1/a + 1/b + 1/c > 1``; with four or more it is infinite.
    """
    _require_negative_definite(g)
    if any(v.genus > 0 for v in g.vertices):
        return Pi1.INFINITE
    shape = classify_shape(g)
    if shape.kind in ("multi-node", "cyclic"):
        return Pi1.INFINITE
    if shape.kind in ("single-vertex", "chain"):
        return Pi1.FINITE
    if shape.kind == "star":
        alphas = seifert_data(g).multiplicities
        if len(alphas) <= 2:
            return Pi1.FINITE
        if len(alphas) == 3:
            return Pi1.FINITE if sum(Fraction(1, a) for a in alphas) > 1 else Pi1.INFINITE
        return Pi1.INFINITE
    return Pi1.UNKNOWN


# -- JSJ skeleton -----------------------------------------------------------------


@dataclass(frozen=True)
class JsjSkeleton:
    """Node-centered pieces and the chains joining them.

    ``pieces`` maps each node id to the vertices of its piece (the node and
    its dangling legs).  ``tori`` lists ``(node_a, node_b, chain)`` for each
    connecting chain.  ``status`` is ``ok`` or ``unknown``.
    """

    pieces: tuple[tuple[str, tuple[str, ...]], ...] = ()
    tori: tuple[tuple[str, str, tuple[str, ...]], ...] = ()
    status: str = "ok"
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def is_trivial(self) -> bool:
        return self.status == "ok" and not self.tori

    @property
    def unverified_minimality(self) -> tuple[tuple[str, str], ...]:
        """Tori whose connecting chain is empty (adjacent nodes)."""
        return tuple((a, b) for a, b, chain in self.tori if not chain)


def jsj_skeleton(g: PlumbingGraph) -> JsjSkeleton:
    if not g.is_connected:
        return JsjSkeleton(status="unknown", diagnostics=("graph is not connected",))
    if not g.is_tree:
        return JsjSkeleton(status="unknown", diagnostics=("graph has cycles; skeleton not computed",))
    nodes = _nodes(g)
    if any(v.genus > 0 for v in g.vertices) and len(nodes) > 1:
        return JsjSkeleton(
            status="unknown",
            diagnostics=("positive-genus vertex in a graph with several nodes; skeleton not computed",),
        )
    ids = g.ids
    node_set = set(nodes)
    pieces = []
    tori = []
    for c in nodes:
        members = [ids[c]]
        for j, _ in g.neighbors[c]:
            path = _walk_leg(g, j, c)
            end = path[-1]
            if end in node_set:
                if c < end:
                    tori.append((ids[c], ids[end], tuple(ids[k] for k in path[:-1])))
            else:
                members.extend(ids[k] for k in path)
        pieces.append((ids[c], tuple(members)))
    diagnostics = tuple(
        f"nodes {a} and {b} are adjacent; minimality of this torus is unverified"
        for a, b, chain in tori
        if not chain
    )
    return JsjSkeleton(tuple(pieces), tuple(tori), "ok", diagnostics)


def is_atoroidal(g: PlumbingGraph) -> Tri:
    _require_negative_definite(g)
    if any(v.genus > 0 for v in g.vertices):
        return Tri.FALSE
    shape = classify_shape(g)
    if shape.kind in ("single-vertex", "chain"):
        return Tri.TRUE
    if shape.kind == "star":
        # at most three exceptional fibers: small Seifert fibered, hence atoroidal
        return Tri.TRUE if len(seifert_data(g).exceptional) <= 3 else Tri.FALSE
    skel = jsj_skeleton(g)
    if skel.status == "ok" and skel.tori:
        return Tri.FALSE
    return Tri.UNKNOWN
