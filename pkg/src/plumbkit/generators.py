"""Exhaustive generation of small weighted trees, one per isomorphism class."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from plumbkit.graph import PlumbingGraph, Vertex

__all__ = ["tree_shapes", "tree_canonical_form", "weighted_trees"]


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    degree = [len(a) for a in adj]
    leaves = [i for i in range(n) if degree[i] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            for j in adj[leaf]:
                degree[j] -= 1
                if degree[j] == 1:
                    nxt.append(j)
            degree[leaf] = 0
        leaves = nxt
    return leaves


def _rooted(adj, labels, root, parent) -> str:
    kids = sorted(_rooted(adj, labels, c, root) for c in adj[root] if c != parent)
    return f"({labels[root]}{''.join(kids)})"


def tree_canonical_form(adj: list[list[int]], labels: Sequence[object] | None = None) -> str:
    """AHU encoding of a vertex-labelled free tree; equal iff isomorphic."""
    if labels is None:
        labels = [""] * len(adj)
    labels = [str(x) for x in labels]
    return min(_rooted(adj, labels, c, -1) for c in _centers(adj))


def tree_shapes(n: int) -> list[list[list[int]]]:
    """Adjacency lists of the unlabelled trees on ``n`` vertices."""
    if n < 1:
        return []
    shapes = {tree_canonical_form([[]]): [[]]}
    for _ in range(n - 1):
        grown = {}
        for adj in shapes.values():
            for v in range(len(adj)):
                new = [list(a) for a in adj] + [[v]]
                new[v].append(len(adj))
                grown.setdefault(tree_canonical_form(new), new)
        shapes = grown
    return [shapes[k] for k in sorted(shapes)]


def weighted_trees(max_vertices: int, weights: Sequence[int]) -> Iterator[PlumbingGraph]:
    """Every genus-0 plumbing tree with at most ``max_vertices`` vertices and
    Euler numbers from ``weights``, once per isomorphism class.

    Output order is deterministic (by size, then shape, then weight tuple).
    """
    weights = sorted(set(weights))
    for n in range(1, max_vertices + 1):
        for adj in tree_shapes(n):
            seen = set()
            edges = [(f"v{i}", f"v{j}") for i in range(n) for j in adj[i] if i < j]
            for w in itertools.product(weights, repeat=n):
                key = tree_canonical_form(adj, w)
                if key in seen:
                    continue
                seen.add(key)
                yield PlumbingGraph(
                    tuple(Vertex(f"v{i}", 0, w[i]) for i in range(n)),
                    tuple(edges),
                )
