"""Exhaustive minimum-genus search over rotation systems.

The rotation at each vertex keeps its smallest neighbour first, so a vertex of
degree d contributes (d-1)! cyclic orders. Non-orientable searches fix the
edges of a BFS spanning tree positive and run over the sign patterns of the
remaining edges that are not all positive.

Rotations are assigned vertex by vertex in BFS order. After each assignment
the faces whose walks only pass through assigned vertices are final; the
remaining darts can close at most ``remaining // girth`` further faces, which
prunes every branch that cannot reach the face count the target genus needs.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from emn.core.graph import Edge, Graph, is_connected
from emn.embedding.rotation import CombinatorialMap, State, write_rot
from emn.errors import BudgetExceeded, DomainError
from emn.surfaces.surface import Kind, Surface

DEFAULT_MAX_ROTATIONS = 10**7
DEADLINE_STRIDE = 1024


@dataclass(frozen=True)
class GenusResult:
    kind: Kind
    genus: int
    witness: CombinatorialMap

    @property
    def surface(self) -> Surface:
        return Surface(self.kind, self.genus)

    def to_json(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "genus": self.genus,
            "surface": self.surface.name,
            "witness": write_rot(self.witness),
        }


# ---- structural bounds ---------------------------------------------------------


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best: Optional[int] = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def cycle_rank(g: Graph) -> int:
    return g.m - g.n + 1


def _check_searchable(g: Graph) -> None:
    if g.m == 0:
        raise ValueError("Genus search needs at least one edge")
    if not is_connected(g):
        raise ValueError("Genus search needs a connected graph")


def genus_lower_bound(g: Graph, kind: Kind) -> int:
    """Euler bound with at most floor(2|E| / girth) faces."""
    _check_searchable(g)
    shortest = girth(g)
    if shortest is None:
        if kind is Kind.NON_ORIENTABLE:
            raise DomainError("A tree has no non-orientable 2-cell embedding")
        return 0
    chi_max = g.n - g.m + (2 * g.m) // shortest
    if kind is Kind.ORIENTABLE:
        return max(0, (2 - chi_max + 1) // 2)
    return max(1, 2 - chi_max)


def search_space_size(g: Graph, kind: Kind) -> int:
    size = 1
    for d in g.degrees():
        if d > 1:
            size *= math.factorial(d - 1)
    if kind is Kind.NON_ORIENTABLE:
        size *= 2 ** cycle_rank(g)
    return size


# ---- search ------------------------------------------------------------------


def _bfs_tree(g: Graph) -> Tuple[List[int], Set[Edge]]:
    order = [0]
    seen = {0}
    tree: Set[Edge] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                order.append(w)
                tree.add((v, w) if v < w else (w, v))
                queue.append(w)
    return order, tree


class _RotationSearch:
    """Depth-first search for a rotation system with at least ``need`` faces."""

    def __init__(self, g: Graph, signs: Sequence[int], order: Sequence[int], clock: "_Clock"):
        self.g = g
        self.order = list(order)
        self.sign: Dict[Edge, int] = dict(zip(g.edges, signs))
        self.signs = tuple(signs)
        self.clock = clock
        self.girth = girth(g) or 2 * g.m
        self.states: List[State] = [
            (u, w, o) for a, b in g.edges for u, w in ((a, b), (b, a)) for o in (1, -1)
        ]
        self.choices: List[List[Tuple[int, ...]]] = []
        for v in range(g.n):
            nbrs = g.neighbors(v)
            if not nbrs:
                self.choices.append([()])
                continue
            self.choices.append([(nbrs[0],) + rest for rest in itertools.permutations(nbrs[1:])])
        self.rotation: List[Optional[Tuple[int, ...]]] = [None] * g.n
        self.position: List[Optional[Dict[int, int]]] = [None] * g.n

    def _step(self, state: State) -> State:
        u, w, o = state
        o2 = o * self.sign[(u, w) if u < w else (w, u)]
        rot = self.rotation[w]
        i = self.position[w][u]
        return w, rot[(i + o2) % len(rot)], o2

    def _closed_faces(self) -> Tuple[int, int]:
        """(number of final faces, darts they use) under the partial rotation."""
        seen: Set[State] = set()
        closed = 0
        darts = 0
        for start in self.states:
            if start in seen:
                continue
            path = [start]
            seen.add(start)
            state = start
            while True:
                if self.rotation[state[1]] is None:
                    break
                state = self._step(state)
                if state == start:
                    closed += 1
                    darts += len(path)
                    for u, w, o in path:
                        seen.add((w, u, -o * self.sign[(u, w) if u < w else (w, u)]))
                    break
                if state in seen:
                    break
                seen.add(state)
                path.append(state)
        return closed, darts

    def run(self, need: int) -> Optional[CombinatorialMap]:
        if self._dfs(0, need):
            rotation = tuple(r if r is not None else () for r in self.rotation)
            return CombinatorialMap(self.g, rotation, self.signs)
        return None

    def _dfs(self, depth: int, need: int) -> bool:
        self.clock.tick()
        closed, darts = self._closed_faces()
        if closed + (2 * self.g.m - darts) // self.girth < need:
            return False
        if depth == len(self.order):
            return closed >= need
        v = self.order[depth]
        for rot in self.choices[v]:
            self.rotation[v] = rot
            self.position[v] = {w: i for i, w in enumerate(rot)}
            if self._dfs(depth + 1, need):
                return True
        self.rotation[v] = None
        self.position[v] = None
        return False


class _Clock:
    def __init__(self, timeout_secs: Optional[float], size: int):
        self.deadline = None if timeout_secs is None else time.monotonic() + timeout_secs
        self.timeout_secs = timeout_secs
        self.size = size
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % DEADLINE_STRIDE == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded(
                    f"Genus search exceeded the {self.timeout_secs}s deadline "
                    f"(search space {self.size} rotation systems)",
                    size=self.size,
                )


def _sign_classes(g: Graph, kind: Kind, tree: Set[Edge]):
    if kind is Kind.ORIENTABLE:
        yield (1,) * g.m
        return
    cotree = [i for i, e in enumerate(g.edges) if e not in tree]
    for pattern in itertools.product((1, -1), repeat=len(cotree)):
        if all(s == 1 for s in pattern):
            continue
        signs = [1] * g.m
        for i, s in zip(cotree, pattern):
            signs[i] = s
        yield tuple(signs)


def _faces_needed(g: Graph, kind: Kind, genus: int) -> int:
    # genus <= h  <=>  F >= E - V + 2 - 2h (orientable) / E - V + 2 - h
    euler_genus = 2 * genus if kind is Kind.ORIENTABLE else genus
    return g.m - g.n + 2 - euler_genus


def _find(g: Graph, kind: Kind, genus: int, clock: _Clock) -> Optional[CombinatorialMap]:
    order, tree = _bfs_tree(g)
    need = _faces_needed(g, kind, genus)
    for signs in _sign_classes(g, kind, tree):
        found = _RotationSearch(g, signs, order, clock).run(need)
        if found is not None:
            return found
    return None


def _prepare(g: Graph, kind: Kind, max_rotations: int, timeout_secs: Optional[float]) -> _Clock:
    _check_searchable(g)
    if kind is Kind.NON_ORIENTABLE and cycle_rank(g) == 0:
        raise DomainError("A tree has no non-orientable 2-cell embedding")
    size = search_space_size(g, kind)
    if size > max_rotations:
        raise BudgetExceeded(
            f"Search space of {size} rotation systems exceeds the budget of {max_rotations}",
            size=size,
        )
    return _Clock(timeout_secs, size)


def admits_embedding(
    g: Graph,
    kind: Kind,
    genus: int,
    max_rotations: int = DEFAULT_MAX_ROTATIONS,
    timeout_secs: Optional[float] = None,
) -> Optional[CombinatorialMap]:
    """First map (in search order) of genus at most ``genus``, or None."""
    clock = _prepare(g, kind, max_rotations, timeout_secs)
    if genus < genus_lower_bound(g, kind):
        return None
    return _find(g, kind, genus, clock)


def exhaustive_genus(
    g: Graph,
    kind: Kind,
    max_rotations: int = DEFAULT_MAX_ROTATIONS,
    timeout_secs: Optional[float] = None,
) -> GenusResult:
    clock = _prepare(g, kind, max_rotations, timeout_secs)
    ceiling = cycle_rank(g) // 2 if kind is Kind.ORIENTABLE else cycle_rank(g)
    for h in range(genus_lower_bound(g, kind), ceiling + 1):
        found = _find(g, kind, h, clock)
        if found is not None:
            return GenusResult(kind, h, found)
    raise RuntimeError(f"No {kind.value} embedding found up to genus {ceiling}")
