from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

Edge = Tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalise an unordered pair to ``(min, max)``."""
    if u == v:
        raise ValueError(f"Loop at vertex {u} is not allowed in a simple graph")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is kept sorted and duplicate free, so iteration order (and every
    witness derived from it) is deterministic.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}")
        prev: Optional[Edge] = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"Edge ({u}, {v}) is not a normalised edge of a {self.n}-vertex graph")
            if prev is not None and (u, v) <= prev:
                raise ValueError("Edge tuple must be sorted and free of duplicates; use Graph.from_edges")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        normalised = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            normalised.add(edge(u, v))
        return cls(n, tuple(sorted(normalised)))

    # ---- adjacency -------------------------------------------------------

    @cached_property
    def _adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self._adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edge_set

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"Vertex {v} out of range 0..{self.n - 1}")

    # ---- derived graphs --------------------------------------------------

    def induced_subgraph(self, vertices: Sequence[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """Induced subgraph relabelled ``0..k-1``; the second item maps new labels to old."""
        labels = tuple(sorted(set(vertices)))
        for v in labels:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(labels)}
        sub_edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(labels), sub_edges), labels

    def without(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()) -> "Graph":
        """Same vertex set, dropping every edge at ``vertices`` and the listed ``edges``."""
        dead_vertices = set(vertices)
        dead_edges = {edge(u, v) for u, v in edges}
        kept = tuple(
            e for e in self.edges
            if e[0] not in dead_vertices and e[1] not in dead_vertices and e not in dead_edges
        )
        return Graph(self.n, kept)

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("Relabelling must be a permutation of the vertex set")
        position = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(self.n, ((position[u], position[v]) for u, v in self.edges))


@dataclass(frozen=True)
class Matching:
    """Set of pairwise vertex-disjoint edges, stored sorted."""

    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = e
            if u >= v:
                raise ValueError(f"Matching edge {e} is not normalised")
            if u in seen or v in seen:
                raise ValueError(f"Edges share a vertex: {e} is not disjoint from the rest")
            seen.update(e)
        if list(self.edges) != sorted(self.edges):
            raise ValueError("Matching edges must be sorted; use Matching.of")

    @classmethod
    def of(cls, edges: Iterable[Tuple[int, int]]) -> "Matching":
        return cls(tuple(sorted({edge(u, v) for u, v in edges})))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    @cached_property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(v for e in self.edges for v in e)

    def check_in(self, g: Graph, what: str = "matching") -> None:
        for e in self.edges:
            if e not in g.edge_set:
                raise ValueError(f"{what} edge {e} is not an edge of the graph")

    def to_json(self) -> List[List[int]]:
        return [[u, v] for u, v in self.edges]


def parse_edge_list(text: str) -> List[Edge]:
    """Parse ``"0-1,3-4"`` (the CLI form of an edge list); empty text is the empty list."""
    result: List[Edge] = []
    for chunk in text.replace(" ", "").split(","):
        if not chunk:
            continue
        try:
            u, v = (int(part) for part in chunk.split("-"))
        except ValueError:
            raise ValueError(f"Cannot parse edge '{chunk}', expected the form u-v") from None
        result.append(edge(u, v))
    return result


# ---- networkx bridge -----------------------------------------------------------


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_networkx(h: nx.Graph) -> Graph:
    """Nodes must already be the integers ``0..n-1``."""
    n = h.number_of_nodes()
    if set(h.nodes) != set(range(n)):
        raise ValueError(f"networkx graph nodes must be the integers 0..{n - 1}")
    return Graph.from_edges(n, h.edges)


# ---- structural queries -----------------------------------------------------


@dataclass(frozen=True)
class GraphStats:
    connected: bool
    min_degree: int
    degrees: Tuple[int, ...]

    def to_json(self) -> Dict[str, object]:
        return {"connected": self.connected, "min_degree": self.min_degree, "degrees": list(self.degrees)}


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return nx.is_connected(to_networkx(g))


def graph_stats(g: Graph) -> GraphStats:
    degrees = tuple(g.degrees())
    return GraphStats(
        connected=is_connected(g),
        min_degree=min(degrees) if degrees else 0,
        degrees=degrees,
    )


def neighborhood_subgraph(g: Graph, v: int) -> Tuple[Graph, Tuple[int, ...]]:
    """G[N(v)], relabelled; the label map sends new vertex i to its original name."""
    return g.induced_subgraph(g.neighbors(v))


def vertex_connectivity(g: Graph) -> int:
    """Size of a minimum vertex cut; complete graphs report ``n - 1``."""
    if g.n < 2:
        raise ValueError("Vertex connectivity is undefined for graphs with fewer than 2 vertices")
    return nx.node_connectivity(to_networkx(g))
