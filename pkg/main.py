#!/usr/bin/env python3

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from emn.core.families import generate_family, parse_family_spec
from emn.core.graph import Graph, Matching, graph_stats, parse_edge_list
from emn.core.graph6 import parse_graph6, read_graph6_lines, write_graph6
from emn.embedding.euler import euler_report
from emn.embedding.genus import DEFAULT_MAX_ROTATIONS, exhaustive_genus
from emn.embedding.rotation import CombinatorialMap, parse_rot, trace_faces
from emn.errors import BudgetExceeded
from emn.harness.enumerate import enumerate_connected_graphs
from emn.harness.report import emit_json, emit_table, error, print_scan_report, warn
from emn.harness.suites import run_lemma_suite, run_theorem_suite
from emn.matching.extendability import EmnQuery, EmnVerdict, constrained_perfect_matching, has_property_emn
from emn.surfaces.surface import (
    Kind,
    Surface,
    c_constant,
    chi,
    claim3_holds,
    claim3_sweep,
    mu,
    surfaces_with_chi,
    theorem2_threshold,
)
from fixtures.embedded import embedded_fixtures

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


# ---- inputs ------------------------------------------------------------------


def read_graphs(args: argparse.Namespace) -> Iterator[Graph]:
    """Graphs from ``--g6`` (repeatable) or ``--in`` (``-`` is stdin)."""
    if args.g6:
        for text in args.g6:
            yield parse_graph6(text)
        return
    if args.input == "-":
        yield from read_graph6_lines(sys.stdin)
        return
    with open(args.input, "r", encoding="ascii") as f:
        yield from read_graph6_lines(f)


def read_map(path: str) -> CombinatorialMap:
    if path == "-":
        return parse_rot(sys.stdin.read())
    return parse_rot(Path(path).read_text(encoding="utf-8"))


def surface_from_args(args: argparse.Namespace) -> Surface:
    if args.genus is None:
        raise ValueError("--genus is required")
    kind = Kind.NON_ORIENTABLE if args.non_orientable else Kind.ORIENTABLE
    return Surface(kind, args.genus)


# ---- subcommands -------------------------------------------------------------


def _emit_verdict(g: Graph, verdict: EmnVerdict, fmt: str) -> None:
    payload = {"graph6": write_graph6(g), **verdict.to_json()}
    if fmt == "json":
        emit_json(payload, "verdict")
        return
    rows = [("graph6", payload["graph6"]), ("query", str(verdict.query)), ("outcome", verdict.outcome.value)]
    if verdict.witness is not None:
        rows += [("M", verdict.witness.m.to_json()), ("N", verdict.witness.n.to_json())]
    if verdict.reason is not None:
        rows.append(("reason", verdict.reason))
    emit_table(f"{verdict.query}", rows)


def _check_graphs(args: argparse.Namespace, query: EmnQuery) -> int:
    status = EXIT_OK
    for g in read_graphs(args):
        verdict = has_property_emn(g, query)
        _emit_verdict(g, verdict, args.format)
        if verdict.fails:
            status = EXIT_FAIL
    return status


def cmd_emn_check(args: argparse.Namespace) -> int:
    return _check_graphs(args, EmnQuery(args.m, args.n))


def cmd_extendable(args: argparse.Namespace) -> int:
    return _check_graphs(args, EmnQuery(args.m, 0))


def cmd_pm(args: argparse.Namespace) -> int:
    forced = Matching.of(parse_edge_list(args.force))
    forbidden = parse_edge_list(args.forbid)
    status = EXIT_OK
    for g in read_graphs(args):
        found = constrained_perfect_matching(g, forced, forbidden)
        payload: Dict[str, object] = {"graph6": write_graph6(g), "status": "absent" if found is None else "present"}
        if found is not None:
            payload["matching"] = found.to_json()
        else:
            status = EXIT_FAIL
        if args.format == "json":
            emit_json(payload, "pm")
        else:
            emit_table("perfect matching", [(k, v) for k, v in payload.items()])
    return status


def cmd_faces(args: argparse.Namespace) -> int:
    cmap = read_map(args.rot)
    faces = trace_faces(cmap)
    report = euler_report(cmap, faces)
    payload = report.to_json()
    if args.walks:
        payload["walks"] = [[[u, w] for u, w in walk] for walk in faces.faces]
    if args.format == "json":
        emit_json(payload, "faces")
        return EXIT_OK
    rows = [
        ("surface", payload["surface"]),
        ("chi", report.chi),
        ("orientable", report.orientable),
        ("faces", len(faces)),
        ("face sizes", " ".join(map(str, report.face_sizes))),
        ("chi/|V|", report.threshold),
        ("control points", " ".join(map(str, payload["control_points"]))),
    ]
    rows += [(f"phi({v})", p) for v, p in enumerate(report.phi)]
    emit_table("Euler report", rows)
    return EXIT_OK


def cmd_genus(args: argparse.Namespace) -> int:
    kind = Kind(args.kind)
    for g in read_graphs(args):
        result = exhaustive_genus(g, kind, max_rotations=args.max_rotations, timeout_secs=args.timeout_secs)
        payload = {"graph6": write_graph6(g), **result.to_json()}
        if args.format == "json":
            emit_json(payload, "genus")
        else:
            emit_table(
                "minimum genus",
                [("graph6", payload["graph6"]), ("kind", kind.value), ("genus", result.genus), ("surface", result.surface.name)],
            )
            print(payload["witness"], end="")
    return EXIT_OK


def _emit_surface(payload: Dict[str, object], fmt: str) -> None:
    if fmt == "json":
        emit_json(payload, "surface")
    else:
        emit_table(str(payload["surface"]), list(payload.items()))


def _surface_payload(s: Surface) -> Dict[str, object]:
    payload: Dict[str, object] = {"surface": s.name, "chi": chi(s), "mu": mu(s)}
    if chi(s) <= -1:
        payload["c"] = str(c_constant(s))
    return payload


def cmd_mu(args: argparse.Namespace) -> int:
    _emit_surface(_surface_payload(surface_from_args(args)), args.format)
    return EXIT_OK


def cmd_threshold(args: argparse.Namespace) -> int:
    s = surface_from_args(args)
    payload = {"surface": s.name, "chi": chi(s), "k": args.k, "threshold": theorem2_threshold(args.k, s)}
    _emit_surface(payload, args.format)
    return EXIT_OK


def cmd_claim3(args: argparse.Namespace) -> int:
    if args.sweep is not None:
        failing = claim3_sweep(args.sweep, args.sweep_max)
        total = sum(len(surfaces_with_chi(x)) for x in range(args.sweep, args.sweep_max + 1))
        payload = {
            "chi_min": args.sweep,
            "chi_max": args.sweep_max,
            "surfaces": total,
            "failing": [s.name for s in failing],
        }
        if args.format == "json":
            emit_json(payload, "sweep")
        else:
            emit_table("floor(c) <= mu sweep", list(payload.items()))
        return EXIT_FAIL if failing else EXIT_OK
    s = surface_from_args(args)
    holds = claim3_holds(s)
    payload = {**_surface_payload(s), "claim3": holds}
    _emit_surface(payload, args.format)
    return EXIT_OK if holds else EXIT_FAIL


def _emit_graph(g: Graph, fmt: str) -> None:
    if fmt == "json":
        print(write_graph6(g))
        return
    stats = graph_stats(g)
    emit_table(
        write_graph6(g),
        [("n", g.n), ("m", g.m), ("connected", stats.connected), ("min degree", stats.min_degree)],
    )


def cmd_gen(args: argparse.Namespace) -> int:
    name, params = parse_family_spec(args.family)
    _emit_graph(generate_family(name, params), args.format)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    for g in enumerate_connected_graphs(args.order, args.min_degree):
        _emit_graph(g, args.format)
    return EXIT_OK


def _corpus(args: argparse.Namespace) -> Tuple[List[Graph], str]:
    if args.order is not None:
        label = f"connected graphs on {args.order} vertices"
        if args.min_degree is not None:
            label += f" with min degree >= {args.min_degree}"
        return list(enumerate_connected_graphs(args.order, args.min_degree)), label
    if args.family:
        graphs = [generate_family(*parse_family_spec(spec)) for spec in args.family]
        return graphs, "families " + ", ".join(args.family)
    if args.g6 or args.input:
        return list(read_graphs(args)), "stdin" if args.input == "-" else (args.input or "--g6 graphs")
    return [], ""


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    graphs, label = _corpus(args)
    if not graphs:
        raise ValueError("verify-lemmas needs a corpus: --order, --family, --g6 or --in")
    report = run_lemma_suite(graphs, args.max_m, args.max_n, label=label, jobs=args.jobs)
    print_scan_report(report, args.format)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify_theorems(args: argparse.Namespace) -> int:
    graphs, label = _corpus(args)
    corpus: List[Tuple[Graph, Optional[CombinatorialMap]]] = [(g, None) for g in graphs]
    for path in args.rot or ():
        cmap = read_map(path)
        corpus.append((cmap.graph, cmap))
    if args.fixtures:
        # 仓库自带的嵌入图
        corpus += [(a.graph, a.cmap) for a in embedded_fixtures()]
    if not corpus:
        raise ValueError("verify-theorems needs a corpus: --order, --family, --g6, --in, --rot or --fixtures")
    if args.rot or args.fixtures:
        label = ", ".join(filter(None, [label, "supplied maps"]))
    report = run_theorem_suite(
        corpus,
        label=label,
        max_rotations=args.max_rotations,
        timeout_secs=args.timeout_secs,
        jobs=args.jobs,
    )
    print_scan_report(report, args.format)
    if report.skipped:
        warn(f"{len(report.skipped)} graph(s) skipped by the genus budget")
    return EXIT_OK if report.ok else EXIT_FAIL


# ---- parser ------------------------------------------------------------------


def _add_graph_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--g6", action="append", metavar="GRAPH6", help="Inline graph6 string (repeatable)")
    group.add_argument("--in", dest="input", metavar="PATH", help="graph6 file, one graph per line ('-' for stdin)")


def _add_surface(p: argparse.ArgumentParser, required: bool = True) -> None:
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--orientable", action="store_true", help="Orientable surface S_g (default)")
    kind.add_argument("--non-orientable", action="store_true", help="Non-orientable surface N_g")
    p.add_argument("--genus", type=int, required=required, help="Surface genus")


def _add_corpus(p: argparse.ArgumentParser) -> None:
    _add_graph_input(p, required=False)
    p.add_argument("--order", type=int, help="Use every connected graph on this many vertices")
    p.add_argument("--min-degree", type=int, help="Filter --order corpora by minimum degree")
    p.add_argument("--family", action="append", metavar="SPEC", help="Family spec such as 'cycle:6' (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json", help="Output mode (default: json)")
    common.add_argument("--jobs", type=int, default=1, help="Worker processes for corpus scans")
    common.add_argument(
        "--max-rotations",
        type=int,
        default=DEFAULT_MAX_ROTATIONS,
        help=f"Largest rotation-system search space to attempt (default: {DEFAULT_MAX_ROTATIONS})",
    )
    common.add_argument("--timeout-secs", type=float, default=None, help="Deadline for each genus search")

    parser = argparse.ArgumentParser(
        description="Matching extendability E(m,n) and surface embedding toolkit",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("emn-check", parents=[common], help="Decide E(m,n)")
    _add_graph_input(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_emn_check)

    p = sub.add_parser("extendable", parents=[common], help="Decide m-extendability, i.e. E(m,0)")
    _add_graph_input(p)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=cmd_extendable)

    p = sub.add_parser("pm", parents=[common], help="Perfect matching with forced and forbidden edges")
    _add_graph_input(p)
    p.add_argument("--force", default="", metavar="EDGES", help="Forced edges, e.g. '0-1,2-3'")
    p.add_argument("--forbid", default="", metavar="EDGES", help="Forbidden edges, e.g. '1-2'")
    p.set_defaults(handler=cmd_pm)

    p = sub.add_parser("faces", parents=[common], help="Faces, Euler characteristic and contributions of a .rot map")
    p.add_argument("--rot", required=True, metavar="FILE", help="Rotation file ('-' for stdin)")
    p.add_argument("--walks", action="store_true", help="Include the facial walks in JSON output")
    p.set_defaults(handler=cmd_faces)

    p = sub.add_parser("genus", parents=[common], help="Exhaustive minimum genus with a witness map")
    _add_graph_input(p)
    p.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.ORIENTABLE.value)
    p.set_defaults(handler=cmd_genus)

    p = sub.add_parser("mu", parents=[common], help="mu(surface): no graph embedded on it is E(mu-1,1)")
    _add_surface(p)
    p.set_defaults(handler=cmd_mu)

    p = sub.add_parser("threshold", parents=[common], help="Vertex count above which E(k-1,1) fails")
    _add_surface(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_threshold)

    p = sub.add_parser("claim3", parents=[common], help="Check floor(c) <= mu for a surface or a chi range")
    _add_surface(p, required=False)
    p.add_argument("--sweep", type=int, metavar="CHI_MIN", help="Check every surface with CHI_MIN <= chi <= --sweep-max")
    p.add_argument("--sweep-max", type=int, default=-1, metavar="CHI_MAX")
    p.set_defaults(handler=cmd_claim3)

    p = sub.add_parser("gen", parents=[common], help="Generate a graph family member as graph6")
    p.add_argument("--family", required=True, metavar="SPEC", help="e.g. complete:4, join-counterexample:3")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("enumerate", parents=[common], help="All connected graphs of an order, one per isomorphism class")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--min-degree", type=int)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify-lemmas", parents=[common], help="Run the E(m,n) lemma consistency suite")
    _add_corpus(p)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-n", type=int, default=1)
    p.set_defaults(handler=cmd_verify_lemmas)

    p = sub.add_parser("verify-theorems", parents=[common], help="Run the surface theorem suite")
    _add_corpus(p)
    p.add_argument("--rot", action="append", metavar="FILE", help="Embedded graph as a .rot file (repeatable)")
    p.add_argument("--fixtures", action="store_true", help="Add the built-in embedded fixtures")
    p.set_defaults(handler=cmd_verify_theorems)
    return parser


def dispatch(args: argparse.Namespace) -> int:
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except BudgetExceeded as exc:
        error(str(exc))
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        error(str(exc))
        return EXIT_USAGE
    except ArithmeticError as exc:
        # 贡献和与 chi 不符之类：按一次违例处理
        error(str(exc))
        return EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        error(f"--jobs must be at least 1, got {args.jobs}")
        return EXIT_USAGE
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
