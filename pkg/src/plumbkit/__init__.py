"""Exact analysis of plumbing graphs of surface singularity links.

Decides Milnor fillability, computes fundamental cycles and Artin
rationality, extracts Seifert invariants, and assembles verdict reports
for the question of which links carry universally tight contact structures
but no taut foliation.
"""

__version__ = "0.1.0"

from plumbkit.cycles import (
    Divisor,
    RationalityCertificate,
    brute_force_min_cycle,
    fundamental_cycle,
    pair,
    rationality,
)
from plumbkit.errors import GraphError, PlumbkitError, PreconditionError
from plumbkit.graph import (
    IntegerSymMatrix,
    PlumbingGraph,
    Vertex,
    emit_graph,
    intersection_matrix,
    make_chain,
    make_star,
    make_yp,
    parse_graph,
    validate,
)
from plumbkit.lattice import determinant, homology, is_negative_definite, smith_normal_form
from plumbkit.seifert import (
    Pi1,
    SeifertData,
    Tri,
    cf_eval,
    classify_shape,
    is_atoroidal,
    jsj_skeleton,
    negative_cf,
    orbifold_euler,
    pi1_is_finite,
    seifert_data,
)
from plumbkit.verdicts import SearchSpec, VerdictReport, analyze, enumerate_graphs, report_render
