"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque
from typing import List, Sequence

from emn.core.graph import Graph, Matching

UNMATCHED = -1


def _find_augmenting_path(root: int, adj: Sequence[Sequence[int]], match: List[int]) -> int:
    """BFS from an exposed ``root`` contracting blossoms through ``base``.

    Returns the exposed endpoint of an augmenting path (``parent`` links are
    left in place for the caller) or -1.
    """
    n = len(adj)
    used = [False] * n
    parent = [UNMATCHED] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == UNMATCHED:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: List[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    used[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != UNMATCHED and parent[match[to]] != UNMATCHED):
                # 奇环：收缩成花
                cur_base = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur_base, to, blossom)
                mark_path(to, cur_base, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur_base
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == UNMATCHED:
                parent[to] = v
                if match[to] == UNMATCHED:
                    _augment(to, parent, match)
                    return to
                used[match[to]] = True
                queue.append(match[to])
    return UNMATCHED


def _augment(v: int, parent: List[int], match: List[int]) -> None:
    while v != UNMATCHED:
        pv = parent[v]
        ppv = match[pv]
        match[v] = pv
        match[pv] = v
        v = ppv


def max_matching(g: Graph) -> Matching:
    adj = [g.neighbors(v) for v in range(g.n)]
    match = [UNMATCHED] * g.n

    # 贪心初始化，减少增广次数
    for u, v in g.edges:
        if match[u] == UNMATCHED and match[v] == UNMATCHED:
            match[u] = v
            match[v] = u

    for root in range(g.n):
        if match[root] == UNMATCHED and adj[root]:
            _find_augmenting_path(root, adj, match)

    return Matching.of((v, match[v]) for v in range(g.n) if match[v] > v)


def matching_number(g: Graph) -> int:
    return len(max_matching(g))


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and 2 * matching_number(g) == g.n
