import itertools

import networkx as nx
import pytest

from plumbkit.generators import tree_canonical_form, tree_shapes, weighted_trees


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)])
def test_unlabelled_tree_counts(n, count):
    assert len(tree_shapes(n)) == count


def _networkx_weighted_count(n, weights):
    """Isomorphism classes of vertex-weighted trees, counted by brute force with networkx."""
    reps = []
    match = nx.algorithms.isomorphism.categorical_node_match("w", None)
    for base in (nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]):
        for ws in itertools.product(weights, repeat=n):
            t = base.copy()
            nx.set_node_attributes(t, dict(enumerate(ws)), "w")
            if not any(nx.is_isomorphic(t, r, node_match=match) for r in reps):
                reps.append(t)
    return len(reps)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_weighted_trees_one_per_isomorphism_class(n):
    weights = (-3, -2, -1)
    ours = [g for g in weighted_trees(n, weights) if len(g) == n]
    assert len(ours) == _networkx_weighted_count(n, weights)


def test_canonical_form_ignores_labelling():
    path = [[1], [0, 2], [1]]
    relabelled = [[2], [2], [0, 1]]
    assert tree_canonical_form(path, ["a", "b", "c"]) == tree_canonical_form(relabelled, ["a", "c", "b"])
    assert tree_canonical_form(path, ["a", "b", "c"]) != tree_canonical_form(path, ["b", "a", "c"])
