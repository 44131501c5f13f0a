"""Signed rotation systems, face tracing and the ``.rot`` text format.

A traversal state ``(u, w, o)`` walks the dart ``u -> w`` carrying the local
orientation ``o`` (+1 or -1) at ``u``. Crossing an edge multiplies ``o`` by the
edge sign; at the head the walk turns to the successor of ``u`` in the rotation
at ``w`` when the orientation is +1 and to the predecessor otherwise. Every
face is met twice, once per traversal direction; ``(w, u, -o * s)`` is the
mirror of ``(u, w, o)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from emn.core.graph import Edge, Graph, edge, is_connected
from emn.errors import RotationFormatError

State = Tuple[int, int, int]
Dart = Tuple[int, int]


@dataclass(frozen=True)
class CombinatorialMap:
    graph: Graph
    rotation: Tuple[Tuple[int, ...], ...]
    # 与 graph.edges 一一对应
    signs: Tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise ValueError(f"Rotation lists {len(self.rotation)} vertices, graph has {g.n}")
        for v, order in enumerate(self.rotation):
            if sorted(order) != list(g.neighbors(v)):
                raise ValueError(f"Rotation at {v} is not a permutation of its neighbours {list(g.neighbors(v))}")
        if len(self.signs) != g.m:
            raise ValueError(f"Expected {g.m} edge signs, got {len(self.signs)}")
        for e, s in zip(g.edges, self.signs):
            if s not in (1, -1):
                raise ValueError(f"Edge {e} has sign {s}; signs are +1 or -1")

    @classmethod
    def from_rotation(
        cls, graph: Graph, rotation: Sequence[Sequence[int]], negative: Iterable[Tuple[int, int]] = ()
    ) -> "CombinatorialMap":
        flipped = {edge(u, v) for u, v in negative}
        unknown = flipped - graph.edge_set
        if unknown:
            raise ValueError(f"Negative edges not in the graph: {sorted(unknown)}")
        signs = tuple(-1 if e in flipped else 1 for e in graph.edges)
        return cls(graph, tuple(tuple(order) for order in rotation), signs)

    @cached_property
    def _sign_of(self) -> Dict[Edge, int]:
        return dict(zip(self.graph.edges, self.signs))

    @cached_property
    def _position(self) -> Tuple[Dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(order)} for order in self.rotation)

    def sign(self, u: int, v: int) -> int:
        return self._sign_of[edge(u, v)]

    @property
    def negative_edges(self) -> List[Edge]:
        return [e for e, s in zip(self.graph.edges, self.signs) if s < 0]

    def turn(self, w: int, u: int, orientation: int) -> int:
        """Neighbour of ``w`` that follows ``u`` (orientation +1) or precedes it (-1)."""
        order = self.rotation[w]
        i = self._position[w][u]
        return order[(i + orientation) % len(order)]

    def step(self, state: State) -> State:
        u, w, o = state
        o2 = o * self.sign(u, w)
        return w, self.turn(w, u, o2), o2

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.graph.n,
            "rotation": [list(order) for order in self.rotation],
            "negative": [[u, v] for u, v in self.negative_edges],
        }


def mirror(state: State, sign: int) -> State:
    u, w, o = state
    return w, u, -o * sign


# ---- faces ---------------------------------------------------------------------


@dataclass(frozen=True)
class FaceSet:
    """Facial walks as dart sequences; ``corners[v]`` lists the face size of every corner at v."""

    faces: Tuple[Tuple[Dart, ...], ...]
    corners: Tuple[Tuple[int, ...], ...]

    @property
    def sizes(self) -> List[int]:
        return [len(walk) for walk in self.faces]

    def __len__(self) -> int:
        return len(self.faces)


def _check_traceable(g: Graph) -> None:
    if g.m == 0:
        raise ValueError("Face tracing needs at least one edge")
    if not is_connected(g):
        raise ValueError("Face tracing needs a connected graph")


def _all_states(g: Graph) -> Iterator[State]:
    # 先走完所有 +1 状态：在 -1 状态上起步的面会把同一条 dart 再用一次
    for o in (1, -1):
        for a, b in g.edges:
            yield a, b, o
            yield b, a, o


def trace_faces(cmap: CombinatorialMap) -> FaceSet:
    g = cmap.graph
    _check_traceable(g)
    used: Set[State] = set()
    faces: List[Tuple[Dart, ...]] = []
    corner_lists: List[List[int]] = [[] for _ in range(g.n)]
    for start in _all_states(g):
        if start in used:
            continue
        walk: List[Dart] = []
        state = start
        while True:
            used.add(state)
            used.add(mirror(state, cmap.sign(state[0], state[1])))
            walk.append((state[0], state[1]))
            state = cmap.step(state)
            if state == start:
                break
        faces.append(tuple(walk))
        for _, head in walk:
            corner_lists[head].append(len(walk))
    return FaceSet(tuple(faces), tuple(tuple(sizes) for sizes in corner_lists))


def _two_colouring(cmap: CombinatorialMap) -> Optional[List[int]]:
    """Switch values t(v) with t(u)*t(v)*sign(uv) = +1 on every edge, or None."""
    g = cmap.graph
    t = [0] * g.n
    t[0] = 1
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if t[w] == 0:
                t[w] = t[v] * cmap.sign(v, w)
                queue.append(w)
    for (u, v), s in zip(g.edges, cmap.signs):
        if t[u] * t[v] * s != 1:
            return None
    return t


def is_orientable_map(cmap: CombinatorialMap) -> bool:
    if not is_connected(cmap.graph):
        raise ValueError("Orientability is only decided for connected graphs")
    return _two_colouring(cmap) is not None


# ---- local operations -------------------------------------------------------


def switch_vertex(cmap: CombinatorialMap, v: int) -> CombinatorialMap:
    """Reverse the rotation at ``v`` and flip the sign of every edge at ``v``."""
    g = cmap.graph
    if not (0 <= v < g.n):
        raise ValueError(f"Vertex {v} out of range 0..{g.n - 1}")
    rotation = list(cmap.rotation)
    rotation[v] = tuple(reversed(rotation[v]))
    signs = tuple(-s if v in e else s for e, s in zip(g.edges, cmap.signs))
    return CombinatorialMap(g, tuple(rotation), signs)


def random_map(g: Graph, rng: random.Random, signed: bool = True) -> CombinatorialMap:
    rotation = []
    for v in range(g.n):
        order = list(g.neighbors(v))
        rng.shuffle(order)
        rotation.append(tuple(order))
    signs = tuple(rng.choice((1, -1)) for _ in g.edges) if signed else (1,) * g.m
    return CombinatorialMap(g, tuple(rotation), signs)


# ---- .rot format --------------------------------------------------------------


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise RotationFormatError(f"expected an integer {what}, got '{token}'", lineno) from None


def parse_rot(text: str) -> CombinatorialMap:
    """Parse ``n m`` / ``v: u1 u2 ...`` / ``sign u v -1`` lines (``#`` starts a comment)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise RotationFormatError("missing 'n m' header", 1)

    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise RotationFormatError(f"header must be 'n m', got '{header}'", lineno)
    n = _int(parts[0], lineno, "vertex count")
    m = _int(parts[1], lineno, "edge count")
    if n < 0 or m < 0:
        raise RotationFormatError("vertex and edge counts must be non-negative", lineno)
    if len(lines) < 1 + n:
        raise RotationFormatError(f"expected {n} rotation lines", lines[-1][0])

    rotation: List[Optional[Tuple[int, ...]]] = [None] * n
    line_of: Dict[int, int] = {}
    arcs: Set[Tuple[int, int]] = set()
    for lineno, body in lines[1:1 + n]:
        head, sep, rest = body.partition(":")
        if not sep:
            raise RotationFormatError(f"rotation line must look like 'v: u1 u2 ...', got '{body}'", lineno)
        v = _int(head.strip(), lineno, "vertex")
        if not (0 <= v < n):
            raise RotationFormatError(f"vertex {v} out of range 0..{n - 1}", lineno)
        if rotation[v] is not None:
            raise RotationFormatError(f"vertex {v} has two rotation lines", lineno)
        order = tuple(_int(tok, lineno, "neighbour") for tok in rest.split())
        if len(set(order)) != len(order):
            raise RotationFormatError(f"rotation at {v} repeats a neighbour", lineno)
        for u in order:
            if not (0 <= u < n) or u == v:
                raise RotationFormatError(f"invalid neighbour {u} of vertex {v}", lineno)
            arcs.add((v, u))
        rotation[v] = order
        line_of[v] = lineno

    for v, u in sorted(arcs):
        if (u, v) not in arcs:
            raise RotationFormatError(f"{u} is listed at {v} but {v} is missing from the rotation at {u}", line_of[u])
    graph = Graph.from_edges(n, ((v, u) for v, u in arcs if v < u))
    if graph.m != m:
        raise RotationFormatError(f"header declares {m} edges, rotations describe {graph.m}", lines[0][0])

    negative: Dict[Edge, int] = {}
    for lineno, body in lines[1 + n:]:
        tokens = body.split()
        if len(tokens) != 4 or tokens[0] != "sign":
            raise RotationFormatError(f"expected 'sign u v -1', got '{body}'", lineno)
        u = _int(tokens[1], lineno, "vertex")
        v = _int(tokens[2], lineno, "vertex")
        s = _int(tokens[3], lineno, "sign")
        if s not in (1, -1):
            raise RotationFormatError(f"sign must be +1 or -1, got {s}", lineno)
        if u == v or not graph.has_edge(u, v):
            raise RotationFormatError(f"sign line names {u}-{v}, which is not an edge", lineno)
        e = edge(u, v)
        if e in negative:
            raise RotationFormatError(f"edge {u}-{v} has two sign lines", lineno)
        negative[e] = s

    signs = tuple(negative.get(e, 1) for e in graph.edges)
    return CombinatorialMap(graph, tuple(order or () for order in rotation), signs)


def write_rot(cmap: CombinatorialMap) -> str:
    g = cmap.graph
    out = [f"{g.n} {g.m}"]
    for v, order in enumerate(cmap.rotation):
        out.append(f"{v}: {' '.join(map(str, order))}".rstrip())
    for u, v in cmap.negative_edges:
        out.append(f"sign {u} {v} -1")
    return "\n".join(out) + "\n"
