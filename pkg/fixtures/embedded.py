from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from emn.core.families import icosahedron
from emn.core.graph import Graph, to_networkx
from emn.embedding.rotation import CombinatorialMap, parse_rot
from emn.surfaces.surface import Surface

MAPS_DIR = Path(__file__).resolve().parent / "maps"


@dataclass
class MapArtifact:
    name: str
    cmap: CombinatorialMap
    surface: Surface
    labels: Dict[str, int]

    @property
    def graph(self) -> Graph:
        return self.cmap.graph


class MapBuilder:
    """Collects named vertices and their cyclic orders; labels resolve at ``finalize``."""

    def __init__(self):
        self.labels: Dict[str, int] = {}
        self.rotations: Dict[str, Tuple[str, ...]] = {}
        self.negative: List[Tuple[str, str]] = []
        self._map: Optional[CombinatorialMap] = None

    def _assert_mutable(self) -> None:
        if self._map is not None:
            raise RuntimeError("Map already finalized")

    def vertex(self, name: str) -> int:
        self._assert_mutable()
        if name in self.labels:
            raise ValueError(f"Vertex '{name}' already defined")
        self.labels[name] = len(self.labels)
        return self.labels[name]

    def rotation(self, name: str, order: Sequence[str]) -> None:
        """Clockwise neighbour order at ``name``; neighbours may be defined later."""
        self._assert_mutable()
        if name in self.rotations:
            raise ValueError(f"Vertex '{name}' already has a rotation")
        self.rotations[name] = tuple(order)

    def flip(self, a: str, b: str) -> None:
        self._assert_mutable()
        self.negative.append((a, b))

    def _resolve(self, name: str) -> int:
        if name not in self.labels:
            raise ValueError(f"Undefined vertex '{name}'")
        return self.labels[name]

    def finalize(self) -> CombinatorialMap:
        if self._map is not None:
            return self._map
        missing = [name for name in self.labels if name not in self.rotations]
        if missing:
            raise ValueError(f"Vertices without a rotation: {', '.join(missing)}")
        n = len(self.labels)
        rotation: List[Tuple[int, ...]] = [()] * n
        arcs = set()
        for name, order in self.rotations.items():
            v = self._resolve(name)
            rotation[v] = tuple(self._resolve(u) for u in order)
            arcs.update((v, u) for u in rotation[v])
        for v, u in arcs:
            if (u, v) not in arcs:
                raise ValueError(f"Rotation lists {u} at {v} but not {v} at {u}")
        graph = Graph.from_edges(n, ((v, u) for v, u in arcs if v < u))
        negative = [(self._resolve(a), self._resolve(b)) for a, b in self.negative]
        self._map = CombinatorialMap.from_rotation(graph, rotation, negative)
        return self._map

    def index_of(self, name: str) -> int:
        return self._resolve(name)


def _numbered(b: MapBuilder, rotations: Dict[int, Sequence[int]]) -> None:
    for v in sorted(rotations):
        b.vertex(str(v))
    for v, order in rotations.items():
        b.rotation(str(v), [str(u) for u in order])


def build_k4_planar() -> MapArtifact:
    b = MapBuilder()
    _numbered(b, {0: (1, 3, 2), 1: (0, 2, 3), 2: (0, 3, 1), 3: (0, 1, 2)})
    return MapArtifact("k4_planar", b.finalize(), Surface.orientable(0), b.labels)


def build_cube_planar() -> MapArtifact:
    # 顶点编号与 hypercube(3) 一致
    b = MapBuilder()
    _numbered(
        b,
        {
            0: (1, 4, 2),
            1: (0, 3, 5),
            2: (0, 6, 3),
            3: (1, 2, 7),
            4: (0, 5, 6),
            5: (1, 7, 4),
            6: (2, 4, 7),
            7: (3, 6, 5),
        },
    )
    return MapArtifact("cube_planar", b.finalize(), Surface.orientable(0), b.labels)


def build_icosahedron_planar() -> MapArtifact:
    """The planar embedding networkx finds for ``icosahedron()``, same labels."""
    g = icosahedron()
    planar, embedding = nx.check_planarity(to_networkx(g))
    if not planar:
        raise RuntimeError("networkx found no planar embedding of the icosahedron")
    b = MapBuilder()
    _numbered(b, {v: tuple(embedding.neighbors_cw_order(v)) for v in range(g.n)})
    return MapArtifact("icosahedron_planar", b.finalize(), Surface.orientable(0), b.labels)


def build_k5_torus() -> MapArtifact:
    b = MapBuilder()
    _numbered(b, {i: ((i + 1) % 5, (i + 2) % 5, (i + 4) % 5, (i + 3) % 5) for i in range(5)})
    return MapArtifact("k5_torus", b.finalize(), Surface.orientable(1), b.labels)


def build_c4_sphere() -> MapArtifact:
    b = MapBuilder()
    _numbered(b, {0: (1, 3), 1: (0, 2), 2: (1, 3), 3: (0, 2)})
    return MapArtifact("c4_sphere", b.finalize(), Surface.orientable(0), b.labels)


def build_c4_projective() -> MapArtifact:
    """C4 with one negative edge: a single face of length 8 on the projective plane."""
    b = MapBuilder()
    _numbered(b, {0: (1, 3), 1: (0, 2), 2: (1, 3), 3: (0, 2)})
    b.flip("3", "0")
    return MapArtifact("c4_projective", b.finalize(), Surface.non_orientable(1), b.labels)


def embedded_fixtures() -> List[MapArtifact]:
    return [
        build_k4_planar(),
        build_cube_planar(),
        build_icosahedron_planar(),
        build_k5_torus(),
        build_c4_sphere(),
        build_c4_projective(),
    ]


def load_rot_fixture(name: str) -> CombinatorialMap:
    path = MAPS_DIR / f"{name}.rot"
    return parse_rot(path.read_text(encoding="utf-8"))
