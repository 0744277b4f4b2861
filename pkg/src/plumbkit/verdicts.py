"""Verdict reports and the counterexample search.

``analyze`` runs every analysis on a graph and records, for each derived
flag, the results it was inferred from.  The logical chain is:

* negative definite and connected  ->  Milnor fillable
* Milnor fillable                  ->  canonical contact structure universally tight
* rational (Artin)                 ->  L-space
* L-space, Seifert over S^2, QHS   ->  no taut foliation
* pi_1 finite                      <-> quotient singularity
* all of the above, atoroidal and pi_1 infinite -> counterexample to
  Etnyre's questions on taut/Reebless foliations.

Tristate flags stay ``unknown`` whenever no implication applies.
"""

from __future__ import annotations

import json
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from plumbkit.cycles import rationality
from plumbkit.errors import PreconditionError
from plumbkit.graph import PlumbingGraph, intersection_matrix, make_chain, make_star, validate
from plumbkit.lattice import determinant, graph_is_negative_definite, homology
from plumbkit.seifert import (
    Pi1,
    Tri,
    classify_shape,
    is_atoroidal,
    jsj_skeleton,
    orbifold_euler,
    pi1_is_finite,
    seifert_data,
)

__all__ = [
    "SCHEMA_VERSION",
    "ANCHORS",
    "FLAG_NAMES",
    "Flag",
    "VerdictReport",
    "SearchSpec",
    "EnumerationResult",
    "analyze",
    "audit",
    "canonical_encoding",
    "enumerate_graphs",
    "report_to_dict",
    "report_render",
]

SCHEMA_VERSION = "1.0"

# kind is "theorem" for results the verdict chain quotes, "external" for
# standard background used to decide a hypothesis, "computation" for what is
# computed directly here.
ANCHORS: dict[str, tuple[str, str]] = {
    "milnor-fillable-criterion": (
        "theorem",
        "A 3-manifold is Milnor fillable iff it is plumbed along a connected graph "
        "with negative definite intersection form; its Milnor fillable contact structure is unique.",
    ),
    "milnor-fillable-universally-tight": (
        "theorem",
        "Every Milnor fillable contact structure is universally tight.",
    ),
    "rational-link-l-space": (
        "theorem",
        "The link of a rational surface singularity is an L-space (Nemethi).",
    ),
    "seifert-l-space-taut": (
        "theorem",
        "A rational homology sphere Seifert fibered over S^2 is an L-space iff it "
        "carries no taut foliation (Lisca-Stipsicz).",
    ),
    "finite-pi1-quotient": (
        "theorem",
        "A surface singularity link has finite fundamental group iff the singularity "
        "is a quotient singularity.",
    ),
    "small-seifert-atoroidal": (
        "theorem",
        "Small Seifert fibered 3-manifolds (at most three exceptional fibers over S^2) are atoroidal.",
    ),
    "atoroidal-reebless-taut": (
        "theorem",
        "On an atoroidal 3-manifold every Reebless foliation is taut.",
    ),
    "artin-criterion": (
        "theorem",
        "A singularity is rational iff all exceptional curves are rational and "
        "Z.Z + sum z_i(-E_i^2 - 2) = -2 for the fundamental cycle Z (Artin).",
    ),
    "plumbing-homology": (
        "external",
        "H_1 of a plumbed manifold is Z^(2*sum g_i + b_1(graph)) plus the cokernel of the intersection matrix.",
    ),
    "seifert-pi1-criterion": (
        "external",
        "Seifert manifolds over S^2 have finite pi_1 iff they have at most two exceptional fibers "
        "or three with 1/a + 1/b + 1/c > 1; graph manifolds with incompressible tori "
        "or positive-genus base have infinite pi_1.",
    ),
    "lens-atoroidal": (
        "external",
        "Lens spaces and S^3 are atoroidal.",
    ),
    "jsj-node-skeleton": (
        "external",
        "In a reduced plumbing tree each chain joining two nodes gives an incompressible torus.",
    ),
    "seifert-star-graph": (
        "external",
        "Star-shaped genus-0 trees (and chains) plumb Seifert manifolds over S^2; a negative "
        "definite form has nonzero determinant, so the manifold is a rational homology sphere.",
    ),
    "computation": ("computation", "Computed directly from the graph."),
}

FLAG_NAMES = (
    "connected",
    "negative_definite",
    "milnor_fillable",
    "canonical_structure_universally_tight",
    "rational",
    "l_space",
    "taut_foliation_excluded",
    "seifert_over_s2",
    "atoroidal",
    "pi1",
    "quotient_link",
    "etnyre_counterexample",
)


@dataclass(frozen=True)
class Flag:
    value: object  # bool, Tri or Pi1
    basis: tuple[str, ...] = ("computation",)
    note: str = ""

    @property
    def theorems(self) -> tuple[str, ...]:
        return tuple(a for a in self.basis if ANCHORS[a][0] == "theorem")

    def is_true(self) -> bool:
        return self.value is True or self.value == Tri.TRUE


def _unknown(note: str) -> Flag:
    return Flag(Tri.UNKNOWN, (), note)


@dataclass(frozen=True)
class VerdictReport:
    vertex_ids: tuple[str, ...]
    shape: str | None
    connected: Flag
    negative_definite: Flag
    milnor_fillable: Flag
    canonical_structure_universally_tight: Flag
    rational: Flag
    l_space: Flag
    taut_foliation_excluded: Flag
    seifert_over_s2: Flag
    atoroidal: Flag
    pi1: Flag
    quotient_link: Flag
    etnyre_counterexample: Flag
    diagnostics: tuple[str, ...] = ()
    fundamental_cycle: tuple[int, ...] | None = None
    self_intersection: int | None = None
    artin_value: int | None = None
    seifert: dict | None = None
    determinant: int | None = None
    homology: dict | None = None
    jsj: dict | None = None
    violations: tuple[str, ...] = field(default=())

    def flags(self) -> dict[str, Flag]:
        return {name: getattr(self, name) for name in FLAG_NAMES}


def analyze(g: PlumbingGraph) -> VerdictReport:
    diags = tuple(str(d) for d in validate(g))
    connected = g.is_connected
    negdef = graph_is_negative_definite(g)
    milnor = connected and negdef
    f = {
        "connected": Flag(connected),
        "negative_definite": Flag(negdef, note="leading principal minors alternate in sign"),
        "milnor_fillable": Flag(milnor, ("milnor-fillable-criterion",)),
        "canonical_structure_universally_tight": Flag(
            milnor,
            ("milnor-fillable-universally-tight",),
            "canonical contact structure is the Milnor fillable one" if milnor else "no Milnor filling",
        ),
    }
    payload: dict = {}
    shape = None

    if connected and g.vertices:
        shape = classify_shape(g).kind
        h = homology(g)
        payload["homology"] = {
            "free_rank": h.free_rank,
            "torsion": list(h.torsion),
            "order": h.order,
            "provenance": ["plumbing-homology"],
        }
        payload["determinant"] = determinant(intersection_matrix(g))
        skel = jsj_skeleton(g)
        payload["jsj"] = {
            "status": skel.status,
            "trivial": skel.is_trivial,
            "pieces": [{"node": n, "vertices": list(vs)} for n, vs in skel.pieces],
            "tori": [{"between": [a, b], "chain": list(c)} for a, b, c in skel.tori],
            "diagnostics": list(skel.diagnostics),
        }
        try:
            s = seifert_data(g)
        except PreconditionError:
            s = None
        if s is not None:
            payload["seifert"] = {
                "e0": s.e0,
                "exceptional": [str(r) for r in s.exceptional],
                "base_genus": s.base_genus,
                "orbifold_euler": str(orbifold_euler(s)),
            }

    if not milnor:
        why = "graph is disconnected" if not connected else "intersection form is not negative definite"
        for name in FLAG_NAMES[4:]:
            f[name] = _unknown(why)
        f["pi1"] = Flag(Pi1.UNKNOWN, (), why)
    else:
        cert = rationality(g)
        payload["fundamental_cycle"] = tuple(cert.fundamental_cycle)
        payload["self_intersection"] = cert.self_intersection
        payload["artin_value"] = cert.artin_value
        f["rational"] = Flag(
            Tri.of(cert.is_rational),
            ("artin-criterion",),
            f"Artin value {cert.artin_value}" + ("" if cert.all_rational_curves else "; a vertex has positive genus"),
        )

        genus = any(v.genus > 0 for v in g.vertices)
        if shape in ("star", "chain", "single-vertex") and not genus:
            f["seifert_over_s2"] = Flag(Tri.TRUE, ("seifert-star-graph",), "rational homology sphere")
        elif shape == "single-vertex":
            f["seifert_over_s2"] = Flag(Tri.FALSE, ("computation",), "circle bundle over a positive-genus surface")
        else:
            f["seifert_over_s2"] = _unknown(f"{shape} graph; Seifert structure not decided")

        if f["rational"].value == Tri.TRUE:
            f["l_space"] = Flag(Tri.TRUE, ("rational-link-l-space",))
        else:
            f["l_space"] = _unknown("only rationality certifies L-spaces here")

        if f["l_space"].value == Tri.TRUE and f["seifert_over_s2"].value == Tri.TRUE:
            f["taut_foliation_excluded"] = Flag(Tri.TRUE, ("seifert-l-space-taut",))
        else:
            f["taut_foliation_excluded"] = _unknown("needs an L-space Seifert fibered over S^2")

        pi1 = pi1_is_finite(g)
        f["pi1"] = Flag(pi1, ("seifert-pi1-criterion",))

        atoroidal = is_atoroidal(g)
        if shape == "star":
            basis = ("small-seifert-atoroidal",) if atoroidal == Tri.TRUE else ("seifert-pi1-criterion",)
        elif shape in ("chain", "single-vertex"):
            basis = ("lens-atoroidal",) if atoroidal == Tri.TRUE else ("computation",)
        else:
            basis = ("jsj-node-skeleton",)
        f["atoroidal"] = Flag(atoroidal, basis) if atoroidal != Tri.UNKNOWN else _unknown("not decided for this shape")

        if pi1 == Pi1.UNKNOWN:
            f["quotient_link"] = _unknown("pi_1 finiteness undecided")
        else:
            f["quotient_link"] = Flag(Tri.of(pi1 == Pi1.FINITE), ("finite-pi1-quotient",))

        chain_ok = (
            f["taut_foliation_excluded"].value == Tri.TRUE
            and atoroidal == Tri.TRUE
            and pi1 == Pi1.INFINITE
            and f["canonical_structure_universally_tight"].value is True
        )
        chain_basis = (
            "milnor-fillable-universally-tight",
            "rational-link-l-space",
            "seifert-l-space-taut",
            "atoroidal-reebless-taut",
        )
        if chain_ok:
            f["etnyre_counterexample"] = Flag(
                Tri.TRUE,
                chain_basis,
                "atoroidal, infinite pi_1, universally tight canonical structure, no taut or Reebless foliation",
            )
        elif pi1 == Pi1.FINITE or atoroidal == Tri.FALSE:
            f["etnyre_counterexample"] = Flag(
                Tri.FALSE,
                ("computation",),
                "finite pi_1" if pi1 == Pi1.FINITE else "not atoroidal",
            )
        else:
            f["etnyre_counterexample"] = _unknown("hypotheses of the verdict chain not all established")

    report = VerdictReport(vertex_ids=g.ids, shape=shape, diagnostics=diags, **f, **payload)
    return _with_audit(report)


def _with_audit(report: VerdictReport) -> VerdictReport:
    return replace(report, violations=tuple(audit(report)))


def audit(r: VerdictReport) -> list[str]:
    """Check the six implications every report must satisfy; returns violations."""
    out = []
    T = Tri.TRUE
    milnor = r.milnor_fillable.value
    if milnor != (r.connected.value and r.negative_definite.value):
        out.append("milnor_fillable != (connected and negative_definite)")
    if r.canonical_structure_universally_tight.value != milnor:
        out.append("canonical_structure_universally_tight != milnor_fillable")
    if r.rational.value == T and r.l_space.value != T:
        out.append("rational but l_space not true")
    if r.l_space.value == T and r.seifert_over_s2.value == T and r.taut_foliation_excluded.value != T:
        out.append("L-space Seifert over S^2 but taut_foliation_excluded not true")
    if milnor and (r.quotient_link.value == T) != (r.pi1.value == Pi1.FINITE):
        out.append("quotient_link disagrees with pi1 == finite")
    expected = (
        r.taut_foliation_excluded.value == T
        and r.atoroidal.value == T
        and r.pi1.value == Pi1.INFINITE
        and r.canonical_structure_universally_tight.value is True
    )
    if (r.etnyre_counterexample.value == T) != expected:
        out.append("etnyre_counterexample disagrees with its defining conjunction")
    return out


# -- rendering -------------------------------------------------------------------


def _value(v):
    if isinstance(v, (Tri, Pi1)):
        return v.value
    return v


def report_to_dict(r: VerdictReport) -> dict:
    flags = {}
    cited = set()
    for name, fl in r.flags().items():
        cited.update(fl.basis)
        flags[name] = {"value": _value(fl.value), "provenance": list(fl.basis), "note": fl.note}
    if r.homology is not None:
        cited.update(r.homology.get("provenance", ()))
    return {
        "schema_version": SCHEMA_VERSION,
        "graph": {"vertices": list(r.vertex_ids), "shape": r.shape},
        "flags": flags,
        "payload": {
            "fundamental_cycle": list(r.fundamental_cycle) if r.fundamental_cycle is not None else None,
            "self_intersection": r.self_intersection,
            "artin_value": r.artin_value,
            "seifert": r.seifert,
            "determinant": r.determinant,
            "homology": r.homology,
            "jsj": r.jsj,
        },
        "anchors": {a: {"kind": ANCHORS[a][0], "statement": ANCHORS[a][1]} for a in sorted(cited)},
        "diagnostics": list(r.diagnostics),
        "audit": {"violations": list(r.violations)},
    }


def report_render(r: VerdictReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report_to_dict(r), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    width = max(len(n) for n in FLAG_NAMES)
    lines = []
    for name, fl in r.flags().items():
        val = _value(fl.value)
        val = str(val).lower() if isinstance(val, bool) else val
        prov = ",".join(fl.basis) or "-"
        line = f"{name.ljust(width)}  {val:<8}  {prov}"
        if fl.note:
            line += f"  # {fl.note}"
        lines.append(line.rstrip())
    if r.fundamental_cycle is not None:
        lines.append(f"{'fundamental_cycle'.ljust(width)}  {' '.join(map(str, r.fundamental_cycle))}")
        lines.append(f"{'artin_value'.ljust(width)}  {r.artin_value}")
    if r.seifert is not None:
        s = r.seifert
        lines.append(f"{'seifert'.ljust(width)}  ({s['e0']}; {', '.join(s['exceptional'])})"
                     + (f" base genus {s['base_genus']}" if s["base_genus"] else ""))
    if r.homology is not None:
        h = r.homology
        tors = " + ".join(f"Z/{t}" for t in h["torsion"])
        free = f"Z^{h['free_rank']}" if h["free_rank"] else ""
        lines.append(f"{'H_1'.ljust(width)}  {' + '.join(x for x in (free, tors) if x) or '0'}")
    if r.jsj is not None:
        lines.append(f"{'jsj'.ljust(width)}  {r.jsj['status']}, {len(r.jsj['tori'])} tori")
    for d in r.diagnostics:
        lines.append(f"diagnostic  {d}")
    for v in r.violations:
        lines.append(f"VIOLATION  {v}")
    return "\n".join(lines) + "\n"


# -- enumeration -------------------------------------------------------------------

PREDICATES = {
    "any": lambda r: True,
    "connected": lambda r: r.connected.is_true(),
    "negative_definite": lambda r: r.negative_definite.is_true(),
    "milnor_fillable": lambda r: r.milnor_fillable.is_true(),
    "rational": lambda r: r.rational.is_true(),
    "l_space": lambda r: r.l_space.is_true(),
    "taut_foliation_excluded": lambda r: r.taut_foliation_excluded.is_true(),
    "atoroidal": lambda r: r.atoroidal.is_true(),
    "quotient_link": lambda r: r.quotient_link.is_true(),
    "pi1_finite": lambda r: r.pi1.value == Pi1.FINITE,
    "pi1_infinite": lambda r: r.pi1.value == Pi1.INFINITE,
    "etnyre_counterexample": lambda r: r.etnyre_counterexample.is_true(),
}
# predicates that can only hold on negative definite graphs
_NEEDS_NEGDEF = set(PREDICATES) - {"any", "connected"}

SHAPES = ("single-vertex", "chain", "star")


@dataclass(frozen=True)
class SearchSpec:
    max_vertices: int
    euler_range: tuple[int, int] = (-4, -1)
    shapes: tuple[str, ...] = ("star",)
    predicate: str = "etnyre_counterexample"
    cap: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "euler_range", tuple(self.euler_range))
        object.__setattr__(self, "shapes", tuple(self.shapes))
        lo, hi = self.euler_range
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if not -20 <= lo <= hi <= -1:
            raise ValueError("euler_range must satisfy -20 <= lo <= hi <= -1")
        unknown = set(self.shapes) - set(SHAPES)
        if unknown:
            raise ValueError(f"unknown shapes {sorted(unknown)}; choose from {SHAPES}")
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}; choose from {sorted(PREDICATES)}")
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")


@dataclass(frozen=True)
class EnumerationResult:
    items: tuple[tuple[str, PlumbingGraph, VerdictReport], ...]
    truncated: bool
    examined: int

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def encodings(self) -> list[str]:
        return [e for e, _, _ in self.items]


def _fmt(ws) -> str:
    return ",".join(str(w) for w in ws)


def _star_code(e0: int, legs: Sequence[Sequence[int]]) -> str:
    return f"star({e0};{'|'.join(_fmt(l) for l in sorted(tuple(l) for l in legs))})"


def _chain_code(ws: Sequence[int]) -> str:
    ws = tuple(ws)
    return f"chain({_fmt(min(ws, ws[::-1]))})"


def canonical_encoding(g: PlumbingGraph) -> str:
    """Isomorphism-invariant code for genus-0 single vertices, chains and stars.

    Stars are coded by center weight and the sorted multiset of legs (each
    read from the center).  Other shapes get their vertex order appended and
    are not isomorphism-invariant.
    """
    shape = classify_shape(g)
    if any(v.genus for v in g.vertices):
        shape_kind = "other"
    else:
        shape_kind = shape.kind
    eu = {v.id: v.euler for v in g.vertices}
    if shape_kind == "single-vertex":
        return f"vertex({g.vertices[0].euler})"
    if shape_kind == "chain":
        # walk from an end
        end = next(i for i in range(len(g)) if g.degree(i) == 1)
        order = [end]
        prev = -1
        while len(order) < len(g):
            nxt = [j for j, _ in g.neighbors[order[-1]] if j != prev]
            prev = order[-1]
            order.append(nxt[0])
        return _chain_code([g.vertices[i].euler for i in order])
    if shape_kind == "star":
        return _star_code(eu[shape.center], [[eu[v] for v in leg] for leg in shape.legs])
    body = ";".join(f"{v.id}:{v.genus}:{v.euler}" for v in g.vertices)
    edges = ";".join(f"{a}-{b}" for a, b in sorted(g.edges))
    return f"graph({body}/{edges})"


def _chains(weights: Sequence[int], max_len: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, max_len + 1):
        out.extend(itertools.product(weights, repeat=k))
    return sorted(out)


def _candidates(spec: SearchSpec) -> Iterator[tuple[str, PlumbingGraph]]:
    lo, hi = spec.euler_range
    weights = list(range(lo, hi + 1))
    n = spec.max_vertices
    if "single-vertex" in spec.shapes:
        for e in weights:
            yield f"vertex({e})", make_chain([e])
    if "chain" in spec.shapes:
        for k in range(2, n + 1):
            for ws in itertools.product(weights, repeat=k):
                if ws <= ws[::-1]:
                    yield _chain_code(ws), make_chain(ws)
    if "star" in spec.shapes and n >= 4:
        legs = _chains(weights, n - 3)

        def multisets(start, budget, acc):
            if len(acc) >= 3:
                yield list(acc)
            for idx in range(start, len(legs)):
                leg = legs[idx]
                if len(leg) <= budget:
                    acc.append(leg)
                    yield from multisets(idx, budget - len(leg), acc)
                    acc.pop()

        for e0 in weights:
            for ls in multisets(0, n - 1, []):
                yield _star_code(e0, ls), make_star(e0, ls)


def _evaluate(job):
    code, g, predicate = job
    if predicate in _NEEDS_NEGDEF and not graph_is_negative_definite(g):
        return None
    # necessary condition, checked before paying for the full report
    if predicate == "etnyre_counterexample" and pi1_is_finite(g) != Pi1.INFINITE:
        return None
    r = analyze(g)
    return (code, g, r) if PREDICATES[predicate](r) else None


def enumerate_graphs(spec: SearchSpec, workers: int = 1) -> EnumerationResult:
    """All candidate graphs within ``spec`` whose report satisfies ``spec.predicate``.

    Output is sorted by canonical encoding and cut at ``spec.cap`` items
    (``truncated`` is then set).  The result does not depend on ``workers``.
    """
    cands = sorted({code: g for code, g in _candidates(spec)}.items())
    jobs = [(code, g, spec.predicate) for code, g in cands]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=256))
    else:
        results = [_evaluate(j) for j in jobs]
    hits = [r for r in results if r is not None]
    truncated = len(hits) > spec.cap
    return EnumerationResult(tuple(hits[: spec.cap]), truncated, len(jobs))
