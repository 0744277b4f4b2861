"""Plumbing graphs: data model, text/JSON formats, intersection form, families.

A plumbing graph has vertices decorated by ``(genus, euler)`` and an
undirected edge multiset.  The vertex order is part of the value: it fixes
the row order of the intersection matrix and the coordinate order of every
divisor computed from the graph.

Text format, one statement per line, ``#`` starts a comment::

    vertex a genus=0 euler=-2
    vertex b genus=0 euler=-3
    edge a b

JSON format::

    {"vertices": [{"id": "a", "genus": 0, "euler": -2}, ...],
     "edges": [["a", "b"], ...]}
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from plumbkit.errors import GraphError

__all__ = [
    "Vertex",
    "PlumbingGraph",
    "IntegerSymMatrix",
    "Diagnostic",
    "parse_graph",
    "emit_graph",
    "intersection_matrix",
    "validate",
    "make_yp",
    "make_star",
    "make_chain",
]


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int
    euler: int


def _edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _problems(vertices: Sequence[Vertex], edges: Sequence[tuple[str, str]]) -> list[GraphError]:
    found = []
    seen = set()
    for v in vertices:
        if v.id in seen:
            found.append(GraphError("duplicate-id", f"vertex id {v.id!r} declared twice"))
        seen.add(v.id)
        if v.genus < 0:
            found.append(GraphError("negative-genus", f"vertex {v.id!r} has genus {v.genus}"))
    for a, b in edges:
        for end in (a, b):
            if end not in seen:
                found.append(GraphError("dangling-edge", f"edge endpoint {end!r} is not a declared vertex"))
        if a == b:
            found.append(GraphError("self-loop", f"self-loop at {a!r}"))
    return found


@dataclass(frozen=True, eq=False)
class PlumbingGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((a, b) for a, b in self.edges))
        problems = _problems(self.vertices, self.edges)
        if problems:
            raise problems[0]

    def __eq__(self, other):
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._edge_multiset == other._edge_multiset

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self._edge_multiset.items()))))

    def __repr__(self):
        return f"PlumbingGraph(n={len(self.vertices)}, euler={list(self.euler)}, edges={list(self.edges)})"

    @cached_property
    def _edge_multiset(self) -> Counter:
        return Counter(_edge_key(a, b) for a, b in self.edges)

    def __len__(self):
        return len(self.vertices)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def euler(self) -> tuple[int, ...]:
        return tuple(v.euler for v in self.vertices)

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(v.genus for v in self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, ``(neighbour index, edge multiplicity)`` sorted by index."""
        acc: list[Counter] = [Counter() for _ in self.vertices]
        for (a, b), m in self._edge_multiset.items():
            i, j = self.index[a], self.index[b]
            acc[i][j] += m
            acc[j][i] += m
        return tuple(tuple(sorted(c.items())) for c in acc)

    @cached_property
    def csr(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """``(euler, offsets, nbrs, mults)`` as consumed by the kernels."""
        offsets, nbrs, mults = [0], [], []
        for row in self.neighbors:
            for j, m in row:
                nbrs.append(j)
                mults.append(m)
            offsets.append(len(nbrs))
        return list(self.euler), offsets, nbrs, mults

    def degree(self, i: int) -> int:
        return sum(m for _, m in self.neighbors[i])

    def multiplicity(self, i: int, j: int) -> int:
        return self._edge_multiset.get(_edge_key(self.vertices[i].id, self.vertices[j].id), 0)

    @cached_property
    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j, _ in self.neighbors[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.vertices)

    @property
    def first_betti(self) -> int:
        """Cycle rank of the graph, counting parallel edges."""
        if not self.is_connected:
            raise GraphError("bad-argument", "cycle rank requested for a disconnected graph")
        return len(self.edges) - len(self.vertices) + 1

    @property
    def is_tree(self) -> bool:
        return self.is_connected and len(self.edges) == len(self.vertices) - 1

    @cached_property
    def _memo(self) -> dict:
        return {}


def derived(g: PlumbingGraph, key: str, compute):
    """Memoize a value computed from ``g`` on the (immutable) graph itself."""
    memo = g._memo
    if key not in memo:
        memo[key] = compute()
    return memo[key]


@dataclass(frozen=True)
class IntegerSymMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("matrix is not square")
            for j in range(i):
                if r[j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        if not self.rows:
            return ""
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


def validate(g: PlumbingGraph) -> list[Diagnostic]:
    """Diagnostics for ``g``; empty iff the graph is connected and well formed."""
    out = [Diagnostic(p.code, p.message) for p in _problems(g.vertices, g.edges)]
    if not g.vertices:
        out.append(Diagnostic("empty", "graph has no vertices"))
    elif not g.is_connected:
        out.append(Diagnostic("disconnected", "graph is not connected"))
    return out


def intersection_matrix(g: PlumbingGraph) -> IntegerSymMatrix:
    return derived(g, "intersection_matrix", lambda: _build_matrix(g))


def _build_matrix(g: PlumbingGraph) -> IntegerSymMatrix:
    n = len(g)
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        rows[i][i] = v.euler
        for j, m in g.neighbors[i]:
            rows[i][j] = m
    return IntegerSymMatrix(tuple(tuple(r) for r in rows))


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[+-]?\d+\Z")


def parse_graph(text: str) -> PlumbingGraph:
    """Parse a graph from the text DSL or from JSON (detected by a leading ``{``)."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_dsl(text)


def _parse_dsl(text: str) -> PlumbingGraph:
    vertices: list[Vertex] = []
    edges: list[tuple[str, str]] = []
    declared: set[str] = set()
    pending: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        head, col = tokens[0]
        if head == "vertex":
            if len(tokens) < 2:
                raise GraphError("syntax", "vertex statement needs an id", lineno, col)
            vid, vcol = tokens[1]
            if "=" in vid:
                raise GraphError("syntax", f"expected a vertex id, got {vid!r}", lineno, vcol)
            attrs: dict[str, int] = {}
            for tok, tcol in tokens[2:]:
                key, eq, val = tok.partition("=")
                if not eq or key not in ("genus", "euler"):
                    raise GraphError("syntax", f"expected genus=<int> or euler=<int>, got {tok!r}", lineno, tcol)
                if key in attrs:
                    raise GraphError("syntax", f"{key} given twice", lineno, tcol)
                if not _INT.match(val):
                    raise GraphError("syntax", f"{key} must be an integer, got {val!r}", lineno, tcol + len(key) + 1)
                attrs[key] = int(val)
                if key == "genus" and attrs[key] < 0:
                    raise GraphError("negative-genus", f"vertex {vid!r} has genus {val}", lineno, tcol + len(key) + 1)
            for key in ("genus", "euler"):
                if key not in attrs:
                    raise GraphError("syntax", f"vertex {vid!r} is missing {key}=", lineno, col)
            if vid in declared:
                raise GraphError("duplicate-id", f"vertex id {vid!r} declared twice", lineno, vcol)
            declared.add(vid)
            vertices.append(Vertex(vid, attrs["genus"], attrs["euler"]))
        elif head == "edge":
            if len(tokens) != 3:
                raise GraphError("syntax", "edge statement takes exactly two vertex ids", lineno, col)
            (a, acol), (b, bcol) = tokens[1], tokens[2]
            if a == b:
                raise GraphError("self-loop", f"self-loop at {a!r}", lineno, col)
            pending.append((a, lineno, acol))
            pending.append((b, lineno, bcol))
            edges.append((a, b))
        else:
            raise GraphError("syntax", f"unknown statement {head!r}", lineno, col)
    for name, lineno, col in pending:
        if name not in declared:
            raise GraphError("dangling-edge", f"edge endpoint {name!r} is not a declared vertex", lineno, col)
    return PlumbingGraph(tuple(vertices), tuple(edges))


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _array_offsets(text: str, key: str) -> list[int]:
    """Character offsets of the elements of the top-level array ``key``."""
    dec = json.JSONDecoder()
    ws = re.compile(r"\s*")
    pos = ws.match(text, 0).end() + 1  # past "{"
    while True:
        pos = ws.match(text, pos).end()
        if pos >= len(text) or text[pos] == "}":
            return []
        name, pos = dec.raw_decode(text, pos)
        pos = ws.match(text, pos).end() + 1  # past ":"
        pos = ws.match(text, pos).end()
        if name == key and text[pos] == "[":
            offsets = []
            pos += 1
            while True:
                pos = ws.match(text, pos).end()
                if text[pos] == "]":
                    return offsets
                offsets.append(pos)
                _, pos = dec.raw_decode(text, pos)
                pos = ws.match(text, pos).end()
                if text[pos] == ",":
                    pos += 1
        _, pos = dec.raw_decode(text, pos)
        pos = ws.match(text, pos).end()
        if text[pos] == ",":
            pos += 1


def _parse_json(text: str) -> PlumbingGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError("syntax", exc.msg, exc.lineno, exc.colno) from None

    def fail(code, message, key=None, k=None):
        line = col = None
        if key is not None:
            offs = _array_offsets(text, key)
            if k is not None and k < len(offs):
                line, col = _line_col(text, offs[k])
        if line is None:
            line, col = 1, 1
        raise GraphError(code, message, line, col)

    if not isinstance(doc, dict) or not isinstance(doc.get("vertices"), list):
        fail("syntax", 'expected an object with a "vertices" array')
    extra = set(doc) - {"vertices", "edges"}
    if extra:
        fail("syntax", f"unexpected keys {sorted(extra)}")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        fail("syntax", '"edges" must be an array')

    vertices = []
    declared = set()
    for k, item in enumerate(doc["vertices"]):
        if not isinstance(item, dict) or set(item) != {"id", "genus", "euler"}:
            fail("syntax", 'vertex must have exactly "id", "genus", "euler"', "vertices", k)
        vid, genus, euler = item["id"], item["genus"], item["euler"]
        if not isinstance(vid, str) or not vid:
            fail("syntax", "vertex id must be a nonempty string", "vertices", k)
        for name, val in (("genus", genus), ("euler", euler)):
            if not isinstance(val, int) or isinstance(val, bool):
                fail("syntax", f"{name} must be an integer", "vertices", k)
        if genus < 0:
            fail("negative-genus", f"vertex {vid!r} has genus {genus}", "vertices", k)
        if vid in declared:
            fail("duplicate-id", f"vertex id {vid!r} declared twice", "vertices", k)
        declared.add(vid)
        vertices.append(Vertex(vid, genus, euler))

    edges = []
    for k, item in enumerate(raw_edges):
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            fail("syntax", "edge must be a pair of vertex ids", "edges", k)
        a, b = item
        if a == b:
            fail("self-loop", f"self-loop at {a!r}", "edges", k)
        for end in (a, b):
            if end not in declared:
                fail("dangling-edge", f"edge endpoint {end!r} is not a declared vertex", "edges", k)
        edges.append((a, b))
    return PlumbingGraph(tuple(vertices), tuple(edges))


def emit_graph(g: PlumbingGraph, format: str = "dsl") -> str:
    if format == "dsl":
        lines = [f"vertex {v.id} genus={v.genus} euler={v.euler}" for v in g.vertices]
        lines += [f"edge {a} {b}" for a, b in g.edges]
        return "\n".join(lines) + "\n"
    if format == "json":
        doc = {
            "vertices": [{"id": v.id, "genus": v.genus, "euler": v.euler} for v in g.vertices],
            "edges": [[a, b] for a, b in g.edges],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown graph format {format!r}")


# -- families ----------------------------------------------------------------


def make_chain(weights: Sequence[int], prefix: str = "v") -> PlumbingGraph:
    if not weights:
        raise GraphError("empty-leg", "a chain needs at least one vertex")
    ids = [f"{prefix}{i + 1}" for i in range(len(weights))]
    return PlumbingGraph(
        tuple(Vertex(i, 0, e) for i, e in zip(ids, weights)),
        tuple(zip(ids, ids[1:])),
    )


def make_star(e0: int, legs: Iterable[Sequence[int]]) -> PlumbingGraph:
    """Star with a genus-0 center ``c`` and the given legs, each read from the center out.

    Vertex order is the center, then each leg in turn.  Leg ``k`` vertex ``j``
    (both 1-based) is named ``l{k}_{j}``.
    """
    vertices = [Vertex("c", 0, e0)]
    edges = []
    for k, leg in enumerate(legs, start=1):
        leg = list(leg)
        if not leg:
            raise GraphError("empty-leg", f"leg {k} is empty")
        prev = "c"
        for j, e in enumerate(leg, start=1):
            vid = f"l{k}_{j}"
            vertices.append(Vertex(vid, 0, e))
            edges.append((prev, vid))
            prev = vid
    return PlumbingGraph(tuple(vertices), tuple(edges))


def make_yp(p: int) -> PlumbingGraph:
    """Resolution graph of Y_p = Y(-2; 1/3, 2/3, p/(p+1)).

    A -2 hub carrying a -3 leaf, a chain of two -2 vertices and a chain of
    ``p`` -2 vertices.  Vertex order: outer then inner vertex of the length-2
    leg, the hub, the ``p``-chain from the hub outwards, and the -3 vertex
    last.  The fundamental cycle in this order is ``(1, 2, 3, 3, ..., 3, 2, 1, 1)``.
    """
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise GraphError("bad-argument", f"p must be a positive integer, got {p!r}")
    ids = ["b2", "b1", "hub"] + [f"c{k}" for k in range(1, p + 1)] + ["a"]
    weights = [-2] * (p + 3) + [-3]
    vertices = tuple(Vertex(i, 0, e) for i, e in zip(ids, weights))
    edges = [("b2", "b1"), ("b1", "hub"), ("hub", "c1")]
    edges += [(f"c{k}", f"c{k + 1}") for k in range(1, p)]
    edges.append(("hub", "a"))
    return PlumbingGraph(vertices, tuple(edges))
