import json
import random
from importlib import resources

import pytest
from hypothesis import strategies as st

from plumbkit.graph import PlumbingGraph, Vertex


def random_tree(rng: random.Random, n: int, euler=(-5, -1), genus_max=0, prefix="v") -> PlumbingGraph:
    """Uniform-ish random labelled tree via random parent attachment."""
    vertices = tuple(
        Vertex(f"{prefix}{i}", rng.randint(0, genus_max), rng.randint(*euler)) for i in range(n)
    )
    edges = tuple((f"{prefix}{rng.randrange(i)}", f"{prefix}{i}") for i in range(1, n))
    return PlumbingGraph(vertices, edges)


@st.composite
def trees(draw, max_vertices=12, euler=(-6, 3), genus_max=2):
    n = draw(st.integers(1, max_vertices))
    ids = draw(st.lists(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True),
                        min_size=n, max_size=n, unique=True))
    vertices = tuple(
        Vertex(ids[i], draw(st.integers(0, genus_max)), draw(st.integers(*euler))) for i in range(n)
    )
    edges = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges.append((ids[j], ids[i]) if draw(st.booleans()) else (ids[i], ids[j]))
    return PlumbingGraph(vertices, tuple(edges))


def _schema(name):
    return json.loads(resources.files("plumbkit").joinpath("schemas", name).read_text())


@pytest.fixture(scope="session")
def report_schema():
    return _schema("report.schema.json")


@pytest.fixture(scope="session")
def graph_schema():
    return _schema("graph.schema.json")
