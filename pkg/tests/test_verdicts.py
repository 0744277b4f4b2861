import json

import jsonschema
import pytest

from plumbkit.graph import PlumbingGraph, Vertex, make_chain, make_star, make_yp
from plumbkit.seifert import Pi1, Tri
from plumbkit.verdicts import (
    ANCHORS,
    SearchSpec,
    analyze,
    audit,
    canonical_encoding,
    enumerate_graphs,
    report_render,
    report_to_dict,
)


def _values(r):
    return {name: f.value for name, f in r.flags().items()}


def test_y2_verdict_chain():
    v = _values(analyze(make_yp(2)))
    assert v["milnor_fillable"] is True
    assert v["canonical_structure_universally_tight"] is True
    for name in ("rational", "l_space", "taut_foliation_excluded", "atoroidal", "etnyre_counterexample"):
        assert v[name] == Tri.TRUE, name
    assert v["pi1"] == Pi1.INFINITE
    assert v["quotient_link"] == Tri.FALSE


def test_y1_is_a_quotient():
    v = _values(analyze(make_yp(1)))
    assert v["rational"] == Tri.TRUE and v["l_space"] == Tri.TRUE
    assert v["pi1"] == Pi1.FINITE
    assert v["quotient_link"] == Tri.TRUE
    assert v["etnyre_counterexample"] == Tri.FALSE


def test_not_negative_definite_leaves_everything_unknown():
    r = analyze(make_chain([1]))
    v = _values(r)
    assert v["negative_definite"] is False and v["milnor_fillable"] is False
    downstream = ("rational", "l_space", "taut_foliation_excluded", "seifert_over_s2",
                  "atoroidal", "quotient_link", "etnyre_counterexample")
    assert all(v[name] == Tri.UNKNOWN for name in downstream)
    assert v["pi1"] == Pi1.UNKNOWN
    assert r.violations == ()


def test_disconnected_graph_is_reported_not_raised():
    g = PlumbingGraph((Vertex("a", 0, -2), Vertex("b", 0, -2)), ())
    r = analyze(g)
    assert r.connected.value is False and r.milnor_fillable.value is False
    assert r.violations == ()


def test_counterexample_cites_four_theorems():
    flag = analyze(make_yp(2)).etnyre_counterexample
    assert len(flag.theorems) == 4
    assert all(ANCHORS[a][0] == "theorem" for a in flag.theorems)


def test_homology_provenance_is_marked_external():
    d = report_to_dict(analyze(make_yp(2)))
    assert d["payload"]["homology"]["order"] == 9
    assert all(d["anchors"][a]["kind"] == "external" for a in d["payload"]["homology"]["provenance"])


def test_unknown_renders_as_unknown():
    r = analyze(make_chain([1]))
    d = json.loads(report_render(r, "json"))
    assert d["flags"]["rational"]["value"] == "unknown"
    text = report_render(r, "text")
    assert any(line.split()[:2] == ["rational", "unknown"] for line in text.splitlines())
    assert " false" not in text.split("rational", 1)[1].splitlines()[0]


@pytest.mark.parametrize("g", [make_yp(3), make_yp(1), make_chain([1]), make_star(-1, [[-2], [-3], [-7]]),
                               PlumbingGraph((Vertex("a", 2, -1),), ())])
def test_report_json_matches_schema(g, report_schema):
    jsonschema.validate(json.loads(report_render(analyze(g), "json")), report_schema)


def test_rendering_is_deterministic():
    a = report_render(analyze(make_yp(4)), "json")
    b = report_render(analyze(make_yp(4)), "json")
    assert a == b


def test_audit_flags_a_tampered_report():
    r = analyze(make_yp(2))
    assert audit(r) == []
    from dataclasses import replace

    bad = replace(r, quotient_link=replace(r.quotient_link, value=Tri.TRUE))
    assert audit(bad)


def test_canonical_encoding_of_y2():
    assert canonical_encoding(make_yp(2)) == "star(-2;-3|-2,-2|-2,-2)"
    # leg order and labels do not matter
    assert canonical_encoding(make_star(-2, [[-2, -2], [-3], [-2, -2]])) == "star(-2;-3|-2,-2|-2,-2)"
    assert canonical_encoding(make_chain([-2, -3])) == canonical_encoding(make_chain([-3, -2]))


def test_enumerate_finds_y2():
    result = enumerate_graphs(SearchSpec(max_vertices=6, euler_range=(-4, -1), cap=10**6))
    assert "star(-2;-3|-2,-2|-2,-2)" in result.encodings
    assert result.encodings == sorted(result.encodings)
    assert not result.truncated


def test_enumerate_rational_chains():
    spec = SearchSpec(max_vertices=3, euler_range=(-4, -2), shapes=("chain",), predicate="rational")
    result = enumerate_graphs(spec)
    everything = enumerate_graphs(SearchSpec(max_vertices=3, euler_range=(-4, -2), shapes=("chain",),
                                             predicate="milnor_fillable"))
    assert result.encodings == everything.encodings
    # chains of length 2 and 3 up to reversal; single vertices form their own shape
    assert len(result) == 6 + 18


def test_enumerate_empty_range():
    assert len(enumerate_graphs(SearchSpec(max_vertices=1, euler_range=(-1, -1)))) == 0


def test_enumerate_cap_truncates():
    result = enumerate_graphs(SearchSpec(max_vertices=6, euler_range=(-4, -1), cap=3))
    assert len(result) == 3 and result.truncated


def test_enumerate_independent_of_workers():
    spec = SearchSpec(max_vertices=5, euler_range=(-3, -1), predicate="rational", shapes=("star", "chain"))
    assert enumerate_graphs(spec, workers=1).encodings == enumerate_graphs(spec, workers=2).encodings


def test_counterexamples_satisfy_the_conjunction():
    for _, _, r in enumerate_graphs(SearchSpec(max_vertices=6, euler_range=(-4, -1), cap=10**6)):
        assert r.pi1.value == Pi1.INFINITE
        assert r.atoroidal.value == Tri.TRUE
        assert r.rational.value == Tri.TRUE
        assert r.violations == ()


@pytest.mark.parametrize("kwargs", [dict(max_vertices=0), dict(max_vertices=3, euler_range=(-21, -1)),
                                    dict(max_vertices=3, euler_range=(-1, -3)),
                                    dict(max_vertices=3, predicate="nope"),
                                    dict(max_vertices=3, shapes=("blob",))])
def test_search_spec_validation(kwargs):
    with pytest.raises(ValueError):
        SearchSpec(**kwargs)
