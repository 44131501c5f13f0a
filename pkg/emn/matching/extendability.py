"""Constrained perfect matchings and the exact E(m,n) decision procedure.

Every verdict reduces to :func:`emn.matching.blossom.max_matching` on the
graph with the vertices of M and the edges of N deleted. The brute-force
helpers at the bottom never touch the blossom code; they exist so witnesses
and verdicts can be audited independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from emn.core.graph import Edge, Graph, Matching, edge, is_connected
from emn.matching.blossom import matching_number, max_matching


class Outcome(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    NOT_APPLICABLE = "NotApplicable"


REASON_DISCONNECTED = "disconnected"
REASON_TOO_FEW = "too few vertices"
REASON_ODD = "odd vertex count"
# Fails 且没有 witness：连一对 (M, N) 都取不出来
REASON_NO_PAIR = "matching number below m+n"


@dataclass(frozen=True)
class EmnQuery:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"E(m,n) needs m, n >= 0, got ({self.m}, {self.n})")

    @property
    def min_order(self) -> int:
        return 2 * self.m + 2 * self.n + 2

    def __str__(self) -> str:
        return f"E({self.m},{self.n})"


@dataclass(frozen=True)
class Witness:
    m: Matching
    n: Matching

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"m": self.m.to_json(), "n": self.n.to_json()}

    @classmethod
    def from_json(cls, payload: Dict[str, Sequence[Sequence[int]]]) -> "Witness":
        return cls(Matching.of(map(tuple, payload["m"])), Matching.of(map(tuple, payload["n"])))


@dataclass(frozen=True)
class EmnVerdict:
    query: EmnQuery
    outcome: Outcome
    witness: Optional[Witness] = None
    reason: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS

    def to_json(self) -> Dict[str, object]:
        payload: Dict[str, object] = {
            "m": self.query.m,
            "n": self.query.n,
            "outcome": self.outcome.value,
        }
        if self.witness is not None:
            payload["witness"] = self.witness.to_json()
        if self.reason is not None:
            payload["reason"] = self.reason
        return payload


# ---- constrained perfect matching ----------------------------------------------


def _check_constraints(g: Graph, forced: Matching, forbidden: Iterable[Edge]) -> FrozenSet[Edge]:
    forced.check_in(g, "forced")
    banned = frozenset(edge(u, v) for u, v in forbidden)
    for e in banned:
        if e not in g.edge_set:
            raise ValueError(f"forbidden edge {e} is not an edge of the graph")
    overlap = banned & set(forced.edges)
    if overlap:
        raise ValueError(f"Edges both forced and forbidden: {sorted(overlap)}")
    return banned


def _complete(g: Graph, forced: Matching, forbidden: Iterable[Edge]) -> Optional[Matching]:
    if g.n % 2:
        return None
    rest = g.without(vertices=forced.vertices, edges=forbidden)
    found = max_matching(rest)
    if 2 * (len(found) + len(forced)) != g.n:
        return None
    return Matching.of(forced.edges + found.edges)


def constrained_perfect_matching(g: Graph, forced: Matching, forbidden: Iterable[Edge] = ()) -> Optional[Matching]:
    """A perfect matching F with forced ⊆ F and F ∩ forbidden = ∅, or None."""
    banned = _check_constraints(g, forced, forbidden)
    return _complete(g, forced, banned)


# ---- E(m,n) ------------------------------------------------------------------------


def applicability(g: Graph, q: EmnQuery) -> Optional[str]:
    if not is_connected(g):
        return REASON_DISCONNECTED
    if g.n < q.min_order:
        return REASON_TOO_FEW
    if g.n % 2:
        return REASON_ODD
    return None


def matchings_of_size(edges: Sequence[Edge], k: int, blocked: FrozenSet[int] = frozenset()) -> Iterator[Tuple[Edge, ...]]:
    """Vertex-disjoint k-subsets of ``edges`` in ``itertools.combinations`` order."""

    def extend(start: int, used: FrozenSet[int], chosen: Tuple[Edge, ...]) -> Iterator[Tuple[Edge, ...]]:
        if len(chosen) == k:
            yield chosen
            return
        need = k - len(chosen)
        for i in range(start, len(edges) - need + 1):
            u, v = edges[i]
            if u in used or v in used:
                continue
            yield from extend(i + 1, used | {u, v}, chosen + (edges[i],))

    yield from extend(0, blocked, ())


def has_property_emn(g: Graph, q: EmnQuery) -> EmnVerdict:
    """Exact E(m,n) decision with the lexicographically first failing witness.

    M is enumerated before N; N ranges over matchings vertex-disjoint from M.
    Perfect matchings found along the way are reused as certificates for
    later (M, N) pairs, so the blossom kernel only runs on uncovered pairs.
    A graph without m+n independent edges has no pair at all and Fails with
    ``REASON_NO_PAIR`` and no witness.
    """
    reason = applicability(g, q)
    if reason is not None:
        return EmnVerdict(q, Outcome.NOT_APPLICABLE, reason=reason)
    if matching_number(g) < q.m + q.n:
        return EmnVerdict(q, Outcome.FAILS, reason=REASON_NO_PAIR)

    certificates: List[FrozenSet[Edge]] = []
    for m_edges in matchings_of_size(g.edges, q.m):
        forced = Matching(m_edges)
        covered = forced.vertices
        forced_set = frozenset(m_edges)
        for n_edges in matchings_of_size(g.edges, q.n, blocked=covered):
            if any(forced_set <= cert and cert.isdisjoint(n_edges) for cert in certificates):
                continue
            found = _complete(g, forced, n_edges)
            if found is None:
                return EmnVerdict(q, Outcome.FAILS, witness=Witness(forced, Matching(n_edges)))
            certificates.append(frozenset(found.edges))
    return EmnVerdict(q, Outcome.HOLDS)


def is_m_extendable(g: Graph, m: int) -> EmnVerdict:
    return has_property_emn(g, EmnQuery(m, 0))


# ---- brute-force audit (no blossom) --------------------------------------------


def perfect_matchings(g: Graph) -> Iterator[Matching]:
    """All perfect matchings: pair the lowest uncovered vertex with each free neighbour."""
    if g.n % 2:
        return

    def extend(free: FrozenSet[int], chosen: Tuple[Edge, ...]) -> Iterator[Tuple[Edge, ...]]:
        if not free:
            yield chosen
            return
        v = min(free)
        for w in g.neighbors(v):
            if w in free:
                yield from extend(free - {v, w}, chosen + (edge(v, w),))

    for found in extend(frozenset(range(g.n)), ()):
        yield Matching.of(found)


def verify_witness(g: Graph, m: Matching, n: Matching) -> bool:
    """True iff (m, n) is a genuine failing pair, decided by enumeration."""
    m.check_in(g, "M")
    n.check_in(g, "N")
    if m.vertices & n.vertices:
        return False
    forced = frozenset(m.edges)
    banned = frozenset(n.edges)
    for pm in perfect_matchings(g):
        edges = frozenset(pm.edges)
        if forced <= edges and edges.isdisjoint(banned):
            return False
    return True


def brute_force_emn(g: Graph, q: EmnQuery) -> EmnVerdict:
    """Same contract as :func:`has_property_emn`, decided from the full list of perfect matchings."""
    reason = applicability(g, q)
    if reason is not None:
        return EmnVerdict(q, Outcome.NOT_APPLICABLE, reason=reason)
    all_pms = [frozenset(pm.edges) for pm in perfect_matchings(g)]
    seen_pair = False
    for m_edges in matchings_of_size(g.edges, q.m):
        forced = frozenset(m_edges)
        covered = frozenset(v for e in m_edges for v in e)
        for n_edges in matchings_of_size(g.edges, q.n, blocked=covered):
            seen_pair = True
            if not any(forced <= pm and pm.isdisjoint(n_edges) for pm in all_pms):
                return EmnVerdict(q, Outcome.FAILS, witness=Witness(Matching(m_edges), Matching(n_edges)))
    if not seen_pair:
        return EmnVerdict(q, Outcome.FAILS, reason=REASON_NO_PAIR)
    return EmnVerdict(q, Outcome.HOLDS)


# ---- constructive witness for the minimum-degree bound ---------------------------


def _covering_matching(
    g: Graph, must_cover: FrozenSet[int], size: int, blocked: FrozenSet[int]
) -> Optional[Tuple[Edge, ...]]:
    """A matching of exactly ``size`` edges avoiding ``blocked`` and covering ``must_cover``."""
    usable = [e for e in g.edges if e[0] not in blocked and e[1] not in blocked]

    def extend(start: int, used: FrozenSet[int], chosen: Tuple[Edge, ...]) -> Optional[Tuple[Edge, ...]]:
        uncovered = must_cover - used
        slots = size - len(chosen)
        if len(uncovered) > 2 * slots:
            return None
        if slots == 0:
            return chosen if not uncovered else None
        for i in range(start, len(usable)):
            u, v = usable[i]
            if u in used or v in used:
                continue
            found = extend(i + 1, used | {u, v}, chosen + (usable[i],))
            if found is not None:
                return found
        return None

    return extend(0, frozenset(), ())


def low_degree_witness(g: Graph, m: int) -> Optional[Witness]:
    """Failing (M, N) for E(m,1) built from a vertex of degree at most m+1.

    For such a vertex v and a neighbour w, M covers every other neighbour of v
    (inside G - {v, w}) and N = {vw}: v is then left without a partner.
    Returns None when no vertex admits the construction.
    """
    if m < 1:
        raise ValueError(f"The minimum-degree construction needs m >= 1, got {m}")
    if g.n < 2 * m + 4:
        return None
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if not (1 <= len(nbrs) <= m + 1):
            continue
        for w in nbrs:
            others = frozenset(nbrs) - {w}
            found = _covering_matching(g, others, m, frozenset({v, w}))
            if found is not None:
                return Witness(Matching(found), Matching.of([(v, w)]))
    return None


def iter_queries(max_m: int, max_n: int) -> Iterator[EmnQuery]:
    for m, n in itertools.product(range(max_m + 1), range(max_n + 1)):
        yield EmnQuery(m, n)
