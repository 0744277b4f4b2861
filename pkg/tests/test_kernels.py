"""Compiled and pure kernels agree, and both agree with a naive full-box scan."""

import itertools
import random

import pytest

from conftest import random_tree
from plumbkit import _pure, kernels
from plumbkit.cycles import pair
from plumbkit.lattice import graph_is_negative_definite

try:
    from plumbkit import _speedups
except ImportError:  # pragma: no cover - exercised only without a compiler
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None, reason="compiled extension not built")


def _naive(g, bound):
    """Scan every vector of the box and take the componentwise minimum of the candidates."""
    n = len(g)
    hits = [z for z in itertools.product(range(bound + 1), repeat=n)
            if any(z) and all(pair(z, i, g) <= 0 for i in range(n))]
    if not hits:
        return False, None, 0
    return True, [min(col) for col in zip(*hits)], len(hits)


def _graphs(seed, count, max_n=4, euler=(-4, 1)):
    rng = random.Random(seed)
    return [random_tree(rng, rng.randint(1, max_n), euler=euler) for _ in range(count)]


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "pure")


@pytest.mark.parametrize("seed", range(4))
def test_pure_search_matches_naive_scan(seed):
    for g in _graphs(seed, 40):
        for bound in (1, 2, 4):
            found, best, count = _pure.min_cycle_search(*g.csr, bound)
            nfound, nbest, ncount = _naive(g, bound)
            assert (found, count) == (nfound, ncount)
            if found:
                assert list(best) == nbest


@needs_compiled
@pytest.mark.parametrize("seed", range(4))
def test_compiled_search_matches_pure(seed):
    for g in _graphs(100 + seed, 60, max_n=6):
        for bound in (1, 3, 6):
            a = _pure.min_cycle_search(*g.csr, bound)
            b = _speedups.min_cycle_search(*g.csr, bound)
            assert a[0] == b[0] and a[2] == b[2]
            if a[0]:
                assert list(a[1]) == list(b[1])


@needs_compiled
def test_compiled_laufer_matches_pure():
    rng = random.Random(21)
    done = 0
    while done < 200:
        g = random_tree(rng, rng.randint(1, 12), euler=(-5, -1))
        if not graph_is_negative_definite(g):
            continue
        done += 1
        assert list(_pure.laufer(*g.csr)) == list(_speedups.laufer(*g.csr))


def test_pure_laufer_reports_divergence():
    # positive weight: the iteration never settles
    with pytest.raises(_pure.LauferDiverged):
        _pure.laufer([1], [0, 0], [], [], max_steps=1000)


def test_dispatch_falls_back_for_huge_weights():
    big = 2 ** 40
    z = kernels.laufer([-big], [0, 0], [], [])
    assert list(z) == [1]
