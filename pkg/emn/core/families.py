from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple

import networkx as nx

from emn.core.graph import Graph, from_networkx


def complete(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"A cycle needs at least 3 vertices, got {n}")
    return from_networkx(nx.cycle_graph(n))


def path(n: int) -> Graph:
    return from_networkx(nx.path_graph(n))


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return from_networkx(nx.star_graph(k))


def complete_bipartite(a: int, b: int) -> Graph:
    return from_networkx(nx.complete_bipartite_graph(a, b))


def hypercube(d: int = 3) -> Graph:
    """Q_d; the bit tuple ``(b0, b1, ...)`` becomes vertex ``sum(b_i << i)``."""
    cube = nx.hypercube_graph(d)
    return from_networkx(nx.relabel_nodes(cube, {bits: sum(b << i for i, b in enumerate(bits)) for bits in cube}))


def petersen() -> Graph:
    # 外圈 0..4，内圈 5..9 (i ~ i+2)，辐条 i ~ 5+i
    return from_networkx(nx.petersen_graph())


def icosahedron() -> Graph:
    """networkx's labelling; ``fixtures/embedded.py`` embeds the same labels."""
    return from_networkx(nx.icosahedral_graph())


def join_counterexample(m: int) -> Graph:
    """The join of two non-adjacent apices with K_{2m}.

    Clique vertices are ``0..2m-1``; the apices are ``2m`` and ``2m+1``.
    The graph is E(m-1,1) but not m-extendable.
    """
    if m < 1:
        raise ValueError(f"join-counterexample requires m >= 1, got {m}")
    # 2m 个单点部分加一个两点部分 {2m, 2m+1}
    return from_networkx(nx.complete_multipartite_graph(*([1] * (2 * m) + [2])))


# 名称 -> (构造函数, 参数个数)
FAMILIES: Dict[str, Tuple[Callable[..., Graph], Sequence[int]]] = {
    "complete": (complete, (1,)),
    "cycle": (cycle, (1,)),
    "path": (path, (1,)),
    "star": (star, (1,)),
    "complete-bipartite": (complete_bipartite, (2,)),
    "hypercube": (hypercube, (0, 1)),
    "petersen": (petersen, (0,)),
    "icosahedron": (icosahedron, (0,)),
    "join-counterexample": (join_counterexample, (1,)),
}


def parse_family_spec(text: str) -> Tuple[str, Tuple[int, ...]]:
    """Split ``"complete-bipartite:3,3"`` into ``("complete-bipartite", (3, 3))``."""
    name, _, raw = text.strip().partition(":")
    params: Tuple[int, ...] = ()
    if raw:
        try:
            params = tuple(int(p) for p in raw.split(","))
        except ValueError:
            raise ValueError(f"Family parameters must be integers, got '{raw}'") from None
    return name, params


def generate_family(name: str, params: Sequence[int] = ()) -> Graph:
    if name not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ValueError(f"Unknown graph family '{name}' (known: {known})")
    builder, arities = FAMILIES[name]
    if len(params) not in arities:
        raise ValueError(f"Family '{name}' takes {' or '.join(map(str, arities))} parameter(s), got {len(params)}")
    for p in params:
        if p <= 0:
            raise ValueError(f"Family parameters must be positive, got {p}")
    return builder(*params)
