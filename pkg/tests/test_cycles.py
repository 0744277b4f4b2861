import random

import pytest

from conftest import random_tree
from plumbkit.cycles import (
    Divisor,
    brute_force_min_cycle,
    count_min_cycle_candidates,
    fundamental_cycle,
    pair,
    rationality,
    self_intersection,
)
from plumbkit.errors import PreconditionError
from plumbkit.graph import PlumbingGraph, Vertex, make_chain, make_star, make_yp
from plumbkit.lattice import graph_is_negative_definite


def _neg_def_trees(seed, count, max_n=8, euler=(-5, -1), genus_max=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_tree(rng, rng.randint(1, max_n), euler=euler, genus_max=genus_max)
        if graph_is_negative_definite(g):
            out.append(g)
    return out


def test_pair_examples():
    assert pair((1,), 0, make_chain([-2])) == -2
    assert pair((1, 1), 0, make_chain([-2, -2])) == -1
    g = make_yp(2)
    z = fundamental_cycle(g)
    assert pair(z, g.index["hub"], g) <= 0


def test_pair_counts_edge_multiplicity():
    g = PlumbingGraph((Vertex("a", 0, -3), Vertex("b", 0, -3)), (("a", "b"), ("a", "b")))
    assert pair((1, 1), 0, g) == -1


@pytest.mark.parametrize("e", [-1, -2, -7])
def test_single_vertex_cycle(e):
    assert fundamental_cycle(make_chain([e])) == (1,)


@pytest.mark.parametrize("n", range(1, 9))
def test_minus_two_chain_is_all_ones(n):
    assert fundamental_cycle(make_chain([-2] * n)) == (1,) * n


@pytest.mark.parametrize("p", range(2, 11))
def test_yp_cycle_tuple(p):
    assert fundamental_cycle(make_yp(p)) == (1, 2, 3) + (3,) * (p - 2) + (2, 1, 1)


def test_y1_cycle_from_oracle():
    g = make_yp(1)
    assert fundamental_cycle(g) == (1, 2, 2, 1, 1)
    assert brute_force_min_cycle(g, 5) == (1, 2, 2, 1, 1)


def test_brute_force_examples():
    assert brute_force_min_cycle(make_chain([-2]), 3) == (1,)
    assert brute_force_min_cycle(make_chain([-2, -2]), 1) == (1, 1)
    assert brute_force_min_cycle(make_yp(2), 5) == fundamental_cycle(make_yp(2))


def test_brute_force_returns_none_below_the_cycle():
    # Y_3 needs a coefficient 3, so the box [0,2]^7 holds no candidate
    assert brute_force_min_cycle(make_yp(3), 2) is None


def test_candidate_count_on_a_single_vertex():
    # every z in 1..bound qualifies
    assert count_min_cycle_candidates(make_chain([-2]), 6) == 6


def test_fundamental_cycle_requires_negative_definite():
    with pytest.raises(PreconditionError):
        fundamental_cycle(make_chain([1]))
    with pytest.raises(PreconditionError):
        fundamental_cycle(make_chain([-1, -1]))
    disconnected = PlumbingGraph((Vertex("a", 0, -2), Vertex("b", 0, -2)), ())
    with pytest.raises(PreconditionError):
        fundamental_cycle(disconnected)


def test_oracle_relation_with_adaptive_bound():
    """The oracle returns Z exactly when Z fits the box, and None otherwise."""
    for g in _neg_def_trees(1, 300, max_n=6):
        z = fundamental_cycle(g)
        for bound in (max(z) - 1, max(z), max(z) + 2):
            if bound < 1:
                continue
            expected = z if max(z) <= bound else None
            assert brute_force_min_cycle(g, bound) == expected


def test_full_support_and_nonpositive_pairings():
    for g in _neg_def_trees(2, 300, max_n=10, genus_max=2):
        z = fundamental_cycle(g)
        assert all(c >= 1 for c in z)
        assert all(pair(z, i, g) <= 0 for i in range(len(g)))


def test_increment_order_does_not_matter():
    rng = random.Random(3)
    for g in _neg_def_trees(3, 200, max_n=10):
        order = list(range(len(g)))
        rng.shuffle(order)
        assert fundamental_cycle(g, order) == fundamental_cycle(g)
        assert fundamental_cycle(g, reversed(range(len(g)))) == fundamental_cycle(g)


def test_order_must_be_a_permutation():
    with pytest.raises(ValueError):
        fundamental_cycle(make_chain([-2, -2]), [0, 0])


def test_artin_value_is_even():
    for g in _neg_def_trees(4, 300, max_n=8, genus_max=2):
        cert = rationality(g)
        assert cert.artin_value % 2 == 0
        assert cert.self_intersection == self_intersection(cert.fundamental_cycle, g)


def test_rationality_examples():
    cert = rationality(make_chain([-2]))
    assert (cert.self_intersection, cert.artin_value, cert.is_rational) == (-2, -2, True)
    genus_one = PlumbingGraph((Vertex("a", 1, -1),), ())
    assert rationality(genus_one).is_rational is False
    # the (2,3,7) Brieskorn graph is minimally elliptic
    cert = rationality(make_star(-1, [[-2], [-3], [-7]]))
    assert cert.fundamental_cycle == (6, 3, 2, 1) and cert.self_intersection == -1
    assert cert.artin_value == 0 and not cert.is_rational and cert.arithmetic_genus == 1


@pytest.mark.parametrize("p", range(1, 11))
def test_yp_is_rational(p):
    cert = rationality(make_yp(p))
    assert cert.artin_value == -2 and cert.is_rational


def test_divisor_behaves_like_a_tuple():
    d = Divisor((1, 2, 3))
    assert d == [1, 2, 3] and list(d) == [1, 2, 3] and str(d) == "1 2 3"
    with pytest.raises(ValueError):
        Divisor((1, -1))


@pytest.mark.slow
def test_oracle_relation_on_every_small_tree():
    """All negative-definite trees with at most 6 vertices and weights in [-5,-1].

    The box [0,8]^n contains the fundamental cycle unless some coefficient
    exceeds 8; those graphs are re-checked with the box enlarged to max(Z).
    """
    from plumbkit.generators import weighted_trees

    outside = 0
    for g in weighted_trees(6, range(-5, 0)):
        if not graph_is_negative_definite(g):
            continue
        z = fundamental_cycle(g)
        if max(z) <= 8:
            assert brute_force_min_cycle(g, 8) == z
        else:
            outside += 1
            assert brute_force_min_cycle(g, 8) is None
            assert brute_force_min_cycle(g, max(z)) == z
    assert outside == 157
