"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 precondition violation (e.g. a form that is not negative definite).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from plumbkit import __version__
from plumbkit.cycles import fundamental_cycle
from plumbkit.errors import GraphError, PreconditionError
from plumbkit.graph import emit_graph, intersection_matrix, make_star, make_yp, parse_graph, validate
from plumbkit.seifert import orbifold_euler, seifert_data
from plumbkit.verdicts import PREDICATES, SHAPES, SearchSpec, analyze, enumerate_graphs, report_render, report_to_dict

log = logging.getLogger("plumbkit")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    """Parse and validate a graph file; raises GraphError on any problem."""
    g = parse_graph(_read(path))
    problems = validate(g)
    if problems:
        raise GraphError(problems[0].code, problems[0].message)
    return g


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_analyze(args, out):
    report = analyze(_load(args.file))
    out.write(report_render(report, args.format))


def _cmd_matrix(args, out):
    g = _load(args.file)
    m = intersection_matrix(g)
    if args.format == "json":
        out.write(_dump({"vertices": list(g.ids), "matrix": m.tolist()}))
    else:
        out.write(str(m) + "\n")


def _cmd_cycle(args, out):
    g = _load(args.file)
    z = fundamental_cycle(g)
    if args.format == "json":
        out.write(_dump({"vertices": list(g.ids), "fundamental_cycle": list(z)}))
    else:
        out.write(f"{z}\n")


def _cmd_seifert(args, out):
    g = _load(args.file)
    s = seifert_data(g)
    if args.format == "json":
        out.write(_dump({
            "e0": s.e0,
            "exceptional": [str(r) for r in s.exceptional],
            "base_genus": s.base_genus,
            "orbifold_euler": str(orbifold_euler(s)),
        }))
    else:
        out.write(f"{s}\n")


def _cmd_family(args, out):
    if args.family == "yp":
        if args.p is None:
            raise UsageError("family yp: --p is required")
        g = make_yp(args.p)
    else:
        if args.e0 is None:
            raise UsageError("family star: --e0 is required")
        try:
            legs = [[int(x) for x in leg.split(",")] for leg in args.leg or []]
        except ValueError:
            raise UsageError("family star: --leg takes comma-separated integers") from None
        g = make_star(args.e0, legs)
    if args.emit == "report":
        out.write(report_render(analyze(g), args.format))
    else:
        out.write(emit_graph(g, "json" if args.format == "json" else "dsl"))


def _cmd_enumerate(args, out):
    try:
        spec = SearchSpec(
            max_vertices=args.max_vertices,
            euler_range=(args.euler_min, args.euler_max),
            shapes=tuple(s.strip() for s in args.shapes.split(",") if s.strip()),
            predicate=args.predicate,
            cap=args.cap,
        )
    except ValueError as exc:
        raise UsageError(f"enumerate: {exc}") from None
    result = enumerate_graphs(spec, workers=args.workers)
    log.info("examined %d candidates, %d matches", result.examined, len(result))
    if args.format == "json":
        out.write(_dump({
            "schema_version": "1.0",
            "spec": {
                "max_vertices": spec.max_vertices,
                "euler_range": list(spec.euler_range),
                "shapes": list(spec.shapes),
                "predicate": spec.predicate,
                "cap": spec.cap,
            },
            "examined": result.examined,
            "truncated": result.truncated,
            "results": [{"encoding": code, "report": report_to_dict(r)} for code, _, r in result],
        }))
    else:
        for code, _, _ in result:
            out.write(code + "\n")
        if result.truncated:
            out.write(f"# truncated at {spec.cap} results\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="plumbkit", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"plumbkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (
        ("analyze", _cmd_analyze, "full verdict report"),
        ("matrix", _cmd_matrix, "intersection matrix"),
        ("cycle", _cmd_cycle, "fundamental cycle (Laufer)"),
        ("seifert", _cmd_seifert, "normalized Seifert invariants"),
    ):
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("file", help="graph file in DSL or JSON form; '-' reads stdin")
        p.set_defaults(func=fn)

    p = sub.add_parser("family", help="generate a named graph family", parents=[common])
    p.add_argument("family", choices=("yp", "star"))
    p.add_argument("--p", type=int, help="parameter of Y_p")
    p.add_argument("--e0", type=int, help="center weight of a star")
    p.add_argument("--leg", action="append", help="star leg as comma-separated weights, center first; repeatable; write --leg=-2,-2")
    p.add_argument(
        "--emit",
        nargs="?",
        const="graph",
        default="graph",
        choices=("graph", "report"),
        help="write the graph document (default) or its verdict report",
    )
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("enumerate", help="search small stars/chains for a predicate", parents=[common])
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--euler-min", type=int, required=True)
    p.add_argument("--euler-max", type=int, required=True)
    p.add_argument("--predicate", default="etnyre_counterexample", choices=sorted(PREDICATES))
    p.add_argument("--shapes", default="star", help=f"comma-separated subset of {','.join(SHAPES)}")
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_enumerate)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
        stream=stderr,
    )
    try:
        args.func(args, stdout)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def main() -> None:
    sys.exit(run())
