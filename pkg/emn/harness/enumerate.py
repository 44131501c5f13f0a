"""Canonical forms and isomorph-free generation of small connected graphs.

``canonical_form`` relabels a graph by nauty's canonical labelling (through
pynauty) and writes the result as graph6, so two graphs share a canonical
form exactly when they are isomorphic.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence

import pynauty

from emn.core.graph import Graph
from emn.core.graph6 import parse_graph6, write_graph6
from emn.errors import BudgetExceeded

MAX_CANONICAL_ORDER = 10
MAX_ENUMERATION_ORDER = 8


def to_pynauty(g: Graph) -> pynauty.Graph:
    return pynauty.Graph(
        number_of_vertices=g.n,
        directed=False,
        adjacency_dict={v: list(g.neighbors(v)) for v in range(g.n) if g.degree(v)},
    )


def canonical_order(g: Graph) -> List[int]:
    """Vertex ordering whose relabelling is the canonical representative."""
    if g.n > MAX_CANONICAL_ORDER:
        raise BudgetExceeded(
            f"Canonical forms are limited to {MAX_CANONICAL_ORDER} vertices, got {g.n}", size=g.n
        )
    if g.n < 2:
        return list(range(g.n))
    # canon_label[i] 是放到位置 i 的原顶点，与 Graph.relabel 的约定一致
    return list(pynauty.canon_label(to_pynauty(g)))


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical relabelling; equal iff the graphs are isomorphic."""
    return write_graph6(g.relabel(canonical_order(g)))


def enumerate_connected_graphs(n: int, min_degree: Optional[int] = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, sorted by canonical graph6.

    Every connected graph has a vertex whose removal leaves it connected, so the
    classes of order k come from joining a new vertex to a non-empty vertex set
    of every class of order k - 1.
    """
    if n > MAX_ENUMERATION_ORDER:
        raise BudgetExceeded(
            f"Built-in enumeration stops at {MAX_ENUMERATION_ORDER} vertices; "
            "feed larger corpora as graph6 files with --in",
            size=n,
        )
    if n < 1:
        return
    level: List[str] = [canonical_form(Graph(1))]
    for k in range(2, n + 1):
        found: Dict[str, None] = {}
        for code in level:
            h = parse_graph6(code)
            for subset in range(1, 1 << (k - 1)):
                extra = [(v, k - 1) for v in range(k - 1) if subset >> v & 1]
                candidate = Graph.from_edges(k, h.edges + tuple(extra))
                found.setdefault(canonical_form(candidate), None)
        level = sorted(found)
    for code in level:
        g = parse_graph6(code)
        if min_degree is not None and min(g.degrees()) < min_degree:
            continue
        yield g


def count_isomorphism_classes(graphs: Sequence[Graph]) -> int:
    return len({canonical_form(g) for g in graphs})


def is_isomorph_free(graphs: Sequence[Graph]) -> bool:
    forms = [canonical_form(g) for g in graphs]
    return len(forms) == len(set(forms))
