"""Corpus-wide consistency suites for the E(m,n) lemmas and the surface theorems.

Each corpus graph is evaluated independently by a module-level worker (so a
process pool can run them) and the outcomes are merged in corpus order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from emn.core.graph import Graph, graph_stats, neighborhood_subgraph, vertex_connectivity
from emn.core.graph6 import write_graph6
from emn.embedding.euler import euler_report, phi_bound, triangular_corner_count
from emn.embedding.genus import DEFAULT_MAX_ROTATIONS, admits_embedding, genus_lower_bound
from emn.embedding.rotation import CombinatorialMap, trace_faces
from emn.errors import BudgetExceeded
from emn.harness.report import GraphOutcome, ScanReport, err_console
from emn.matching.blossom import matching_number
from emn.matching.extendability import (
    EmnQuery,
    EmnVerdict,
    applicability,
    has_property_emn,
    low_degree_witness,
    verify_witness,
)
from emn.surfaces.surface import Kind, Surface, c_constant, chi, mu, theorem2_threshold

LEMMA_CHECKS = [
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "lemma10",
    "lemma10-witness",
    "witness-audit",
]

THEOREM_CHECKS = [
    "theorem1",
    "theorem2",
    "corollary1",
    "claim1",
    "claim2",
    "phi-bound",
    "lemma9",
    "control-points",
]

T = TypeVar("T")


class _Verdicts:
    """Per-graph cache of E(m,n) verdicts."""

    def __init__(self, g: Graph):
        self.g = g
        self._cache: Dict[Tuple[int, int], EmnVerdict] = {}

    def __call__(self, m: int, n: int) -> EmnVerdict:
        key = (m, n)
        if key not in self._cache:
            self._cache[key] = has_property_emn(self.g, EmnQuery(m, n))
        return self._cache[key]

    def applicable(self, m: int, n: int) -> bool:
        return applicability(self.g, EmnQuery(m, n)) is None

    def items(self):
        return sorted(self._cache.items())


def claim1_parameter(x: int, y: int) -> int:
    """m such that a vertex with y corners, x of them triangular, rules out E(m,1).

    Consecutive triangular corners give a matching of size ceil(x/2) in G[N(v)],
    except when all y corners are triangles and y is odd, where it is floor(x/2).
    """
    if not (0 <= x <= y):
        raise ValueError(f"Need 0 <= x <= y, got x={x}, y={y}")
    if x == y and y % 2:
        return x // 2
    return y - (x + 1) // 2


# ---- lemma suite -----------------------------------------------------------------


def lemma_checks(g: Graph, max_m: int, max_n: int) -> GraphOutcome:
    out = GraphOutcome(write_graph6(g))
    verdict = _Verdicts(g)
    queries = [(m, n) for m in range(max_m + 1) for n in range(max_n + 1)]
    for m, n in queries:
        out.verdicts[f"E({m},{n})"] = verdict(m, n).outcome.value
    stats = graph_stats(g)
    kappa: Optional[int] = None

    for m in range(max_m + 1):
        if not verdict(m, 0).holds:
            continue
        if kappa is None:
            kappa = vertex_connectivity(g)
        if kappa >= m + 1:
            out.passed("lemma1")
        else:
            out.violated("lemma1", f"E({m},0) holds but the connectivity is {kappa}")
        for v in range(g.n):
            t = g.degree(v) - m
            if t < 1:
                continue
            sub, _ = neighborhood_subgraph(g, v)
            nu = matching_number(sub)
            if nu <= t - 1:
                out.passed("lemma2")
            else:
                out.violated("lemma2", f"E({m},0) holds, deg({v}) = {m}+{t} but G[N({v})] has a matching of size {nu}")

    for m, n in queries:
        if not verdict(m, n).holds:
            continue
        if n >= 1:
            if verdict(m, 0).fails:
                out.violated("lemma3", f"E({m},{n}) holds but E({m},0) fails")
            else:
                out.passed("lemma3")
        if m >= 1:
            if verdict(m - 1, n).fails:
                out.violated("lemma4", f"E({m},{n}) holds but E({m - 1},{n}) fails")
            else:
                out.passed("lemma4")
        if m >= 1 and n == 0 and max_n >= 1:
            if verdict(m - 1, 1).fails:
                out.violated("lemma5", f"E({m},0) holds but E({m - 1},1) fails")
            else:
                out.passed("lemma5")
        if m >= 1 and n == 1:
            if stats.min_degree >= m + 2:
                out.passed("lemma10")
            else:
                out.violated("lemma10", f"E({m},1) holds but the minimum degree is {stats.min_degree}")

    if max_n >= 1:
        for m in range(1, max_m + 1):
            if not verdict.applicable(m, 1):
                continue
            v = verdict(m, 1)
            witness = low_degree_witness(g, m)
            if witness is None:
                continue
            if not verify_witness(g, witness.m, witness.n):
                out.violated("lemma10-witness", f"constructed pair for E({m},1) is not a failing witness")
            elif v.holds:
                out.violated("lemma10-witness", f"E({m},1) holds despite a failing pair from a low-degree vertex")
            else:
                out.passed("lemma10-witness")

    for (m, n), v in verdict.items():
        if not v.fails:
            continue
        if v.witness is None:
            # 无 witness 的 Fails 只允许出现在取不出 m+n 条独立边时
            if matching_number(g) < m + n:
                out.passed("witness-audit")
            else:
                out.violated("witness-audit", f"E({m},{n}) fails without a witness but the matching number is {matching_number(g)}")
            continue
        if verify_witness(g, v.witness.m, v.witness.n):
            out.passed("witness-audit")
        else:
            out.violated("witness-audit", f"E({m},{n}) witness {v.witness.to_json()} is not a failing pair")
    return out


def _lemma_worker(g: Graph, max_m: int, max_n: int) -> GraphOutcome:
    try:
        return lemma_checks(g, max_m, max_n)
    except BudgetExceeded as exc:
        return GraphOutcome(write_graph6(g), skipped=str(exc))


def run_lemma_suite(
    corpus: Iterable[Graph], max_m: int, max_n: int, *, label: str = "corpus", jobs: int = 1
) -> ScanReport:
    if max_m < 0 or max_n < 0:
        raise ValueError(f"max_m and max_n must be non-negative, got {max_m}, {max_n}")
    report = ScanReport(
        suite="lemmas",
        corpus=label,
        slice=f"E(m,n) for 0 <= m <= {max_m}, 0 <= n <= {max_n} on every graph of {label}",
        checks=list(LEMMA_CHECKS),
    )
    worker = partial(_lemma_worker, max_m=max_m, max_n=max_n)
    for outcome in _scan(list(corpus), worker, jobs, "lemma suite"):
        report.merge(outcome)
    return report


# ---- theorem suite -------------------------------------------------------------


def _embedded_checks(g: Graph, cmap: CombinatorialMap, out: GraphOutcome, verdict: _Verdicts) -> None:
    faces = trace_faces(cmap)
    report = euler_report(cmap, faces, strict=False)
    surface = report.surface
    delta = min(g.degrees())

    if sum(report.phi) == report.chi:
        out.passed("lemma9")
    else:
        out.violated("lemma9", f"contributions sum to {sum(report.phi)}, chi = {report.chi}")
    if report.control_points:
        out.passed("control-points")
    else:
        out.violated("control-points", "no vertex reaches chi/|V|")

    _surface_checks(g, surface, out, verdict, f"its map on {surface.name}")

    for v in sorted(report.control_points):
        x, y = triangular_corner_count(cmap, v, faces)
        m = claim1_parameter(x, y)
        if delta < m + 2 or not verdict.applicable(m, 1):
            continue
        if verdict(m, 1).holds:
            out.violated("claim1", f"control point {v} has (x, y) = ({x}, {y}) but E({m},1) holds")
        else:
            out.passed("claim1")

    m = math.floor(c_constant(surface)) - 1 if chi(surface) <= -1 else None
    if m is not None and g.n >= 2 * mu(surface) + 2 and verdict.applicable(m, 1):
        if verdict(m, 1).holds:
            out.violated("claim2", f"{surface.name}: E({m},1) holds")
        else:
            out.passed("claim2")

    for k in range(4, (g.n - 2) // 2 + 1):
        if delta < k + 1 or not verdict(k - 1, 1).holds:
            continue
        bound = phi_bound(k)
        worst = max(report.phi)
        if worst <= bound:
            out.passed("phi-bound")
        else:
            out.violated("phi-bound", f"E({k - 1},1) holds but a vertex has contribution {worst} > {bound}")


def _relevant(g: Graph, surface: Surface, delta: int, verdict: _Verdicts) -> List[Tuple[str, int, int]]:
    """Checks that can bite on ``surface``: (check, m, n) after the size and degree pre-filters."""
    found: List[Tuple[str, int, int]] = []
    m = mu(surface) - 1
    if delta >= m + 2 and verdict.applicable(m, 1):
        found.append(("theorem1", m, 1))
    for k in range(4, (g.n - 2) // 2 + 1):
        if g.n < theorem2_threshold(k, surface) or delta < k + 1:
            continue
        if verdict.applicable(k - 1, 1):
            found.append(("theorem2", k - 1, 1))
        if verdict.applicable(k, 0):
            found.append(("corollary1", k, 0))
    return found


def _surface_checks(g: Graph, surface: Surface, out: GraphOutcome, verdict: _Verdicts, where: str) -> None:
    delta = min(g.degrees())
    for check, m, n in _relevant(g, surface, delta, verdict):
        if verdict(m, n).holds:
            out.violated(check, f"E({m},{n}) holds but the graph has {where}")
        else:
            out.passed(check)


def _stepped_checks(
    g: Graph, out: GraphOutcome, verdict: _Verdicts, max_rotations: int, timeout_secs: Optional[float]
) -> None:
    """Walk orientable genus upwards from the girth bound while any check can still bite."""
    delta = min(g.degrees())
    h = genus_lower_bound(g, Kind.ORIENTABLE)
    while True:
        surface = Surface.orientable(h)
        relevant = _relevant(g, surface, delta, verdict)
        if not relevant:
            return
        holding = [(check, m, n) for check, m, n in relevant if verdict(m, n).holds]
        if not holding:
            for check, _, _ in relevant:
                out.passed(check)
            h += 1
            continue
        found = admits_embedding(g, Kind.ORIENTABLE, h, max_rotations=max_rotations, timeout_secs=timeout_secs)
        if found is not None:
            for check, m, n in holding:
                out.violated(check, f"E({m},{n}) holds but the graph embeds on {surface.name}")
            return
        for check, _, _ in relevant:
            out.passed(check)
        h += 1


def theorem_checks(
    g: Graph,
    cmap: Optional[CombinatorialMap],
    max_rotations: int = DEFAULT_MAX_ROTATIONS,
    timeout_secs: Optional[float] = None,
) -> GraphOutcome:
    out = GraphOutcome(write_graph6(g))
    if g.n < 2 or not graph_stats(g).connected:
        return out
    verdict = _Verdicts(g)
    if cmap is not None:
        if cmap.graph != g:
            raise ValueError("The supplied map does not embed the corpus graph")
        _embedded_checks(g, cmap, out, verdict)
    else:
        _stepped_checks(g, out, verdict, max_rotations, timeout_secs)
    for (m, n), v in verdict.items():
        out.verdicts[f"E({m},{n})"] = v.outcome.value
    return out


def _theorem_worker(
    item: Tuple[Graph, Optional[CombinatorialMap]], max_rotations: int, timeout_secs: Optional[float]
) -> GraphOutcome:
    g, cmap = item
    try:
        return theorem_checks(g, cmap, max_rotations, timeout_secs)
    except BudgetExceeded as exc:
        # 超出预算：记为跳过，不算违例
        return GraphOutcome(write_graph6(g), skipped=str(exc))


def run_theorem_suite(
    corpus: Iterable[Tuple[Graph, Optional[CombinatorialMap]]],
    *,
    label: str = "corpus",
    max_rotations: int = DEFAULT_MAX_ROTATIONS,
    timeout_secs: Optional[float] = None,
    jobs: int = 1,
) -> ScanReport:
    report = ScanReport(
        suite="theorems",
        corpus=label,
        slice=(
            f"graphs of {label}: supplied maps are checked on their own surface; graphs without a map are "
            "checked on S_h for h from the girth bound upwards while a check applies"
        ),
        checks=list(THEOREM_CHECKS),
    )
    worker = partial(_theorem_worker, max_rotations=max_rotations, timeout_secs=timeout_secs)
    for outcome in _scan(list(corpus), worker, jobs, "theorem suite"):
        report.merge(outcome)
    return report


# ---- scan driver -----------------------------------------------------------------


def _scan(items: Sequence[T], worker: Callable[[T], GraphOutcome], jobs: int, description: str) -> List[GraphOutcome]:
    if jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {jobs}")
    progress = Progress(
        TextColumn("[cyan]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=err_console,
        transient=True,
        disable=not err_console.is_terminal,
    )
    results: List[GraphOutcome] = []
    with progress:
        task = progress.add_task(description, total=len(items))
        if jobs == 1:
            for item in items:
                results.append(worker(item))
                progress.advance(task)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for outcome in pool.map(worker, items, chunksize=8):
                    results.append(outcome)
                    progress.advance(task)
    return results
