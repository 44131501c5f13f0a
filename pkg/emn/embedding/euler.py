"""Euler characteristic, per-vertex Euler contributions and control points.

All arithmetic is exact (``fractions.Fraction``); the control-point threshold
chi/|V| is compared as a rational, never as a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from emn.embedding.rotation import CombinatorialMap, FaceSet, is_orientable_map, trace_faces
from emn.surfaces.surface import Kind, Surface


def contribution(degree: int, corner_sizes: Sequence[int]) -> Fraction:
    """1 - deg/2 + sum of 1/f over the corners at a vertex."""
    if len(corner_sizes) != degree:
        raise ValueError(f"A vertex of degree {degree} has {degree} corners, got {len(corner_sizes)}")
    return 1 - Fraction(degree, 2) + sum((Fraction(1, f) for f in corner_sizes), Fraction(0))


def phi_bound(k: int) -> Fraction:
    """Upper bound (3-k)/4 on every contribution in an embedded E(k-1,1) graph, k >= 4."""
    return Fraction(3 - k, 4)


@dataclass(frozen=True)
class EulerReport:
    chi: int
    orientable: bool
    genus: int
    phi: Tuple[Fraction, ...]
    control_points: FrozenSet[int]
    face_sizes: Tuple[int, ...]

    @property
    def surface(self) -> Surface:
        kind = Kind.ORIENTABLE if self.orientable else Kind.NON_ORIENTABLE
        return Surface(kind, self.genus)

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.chi, len(self.phi))

    def to_json(self) -> Dict[str, object]:
        return {
            "chi": self.chi,
            "orientable": self.orientable,
            "genus": self.genus,
            "surface": self.surface.name,
            "faces": len(self.face_sizes),
            "face_sizes": list(self.face_sizes),
            "phi": [str(p) for p in self.phi],
            "control_points": sorted(self.control_points),
        }


def euler_contribution(cmap: CombinatorialMap, v: int, faces: Optional[FaceSet] = None) -> Fraction:
    g = cmap.graph
    if not (0 <= v < g.n):
        raise ValueError(f"Vertex {v} out of range 0..{g.n - 1}")
    if faces is None:
        faces = trace_faces(cmap)
    return contribution(g.degree(v), faces.corners[v])


def triangular_corner_count(cmap: CombinatorialMap, v: int, faces: Optional[FaceSet] = None) -> Tuple[int, int]:
    """``(x, y)``: corners at v lying on triangles, and deg(v)."""
    g = cmap.graph
    if not (0 <= v < g.n):
        raise ValueError(f"Vertex {v} out of range 0..{g.n - 1}")
    if faces is None:
        faces = trace_faces(cmap)
    x = sum(1 for f in faces.corners[v] if f == 3)
    return x, g.degree(v)


def euler_report(cmap: CombinatorialMap, faces: Optional[FaceSet] = None, strict: bool = True) -> EulerReport:
    """Surface, contributions and control points of a map.

    With ``strict`` a contribution sum different from chi, or an empty control
    point set, raises ``ArithmeticError``; the verification suite passes
    ``strict=False`` and records these as violations instead.
    """
    g = cmap.graph
    if faces is None:
        faces = trace_faces(cmap)
    chi = g.n - g.m + len(faces)
    orientable = is_orientable_map(cmap)
    if orientable:
        if chi % 2:
            raise ArithmeticError(f"Orientable map with odd Euler characteristic {chi}")
        genus = (2 - chi) // 2
    else:
        genus = 2 - chi

    phi = tuple(contribution(g.degree(v), faces.corners[v]) for v in range(g.n))
    total = sum(phi, Fraction(0))
    if strict and total != chi:
        raise ArithmeticError(f"Euler contributions sum to {total}, expected chi = {chi}")
    threshold = Fraction(chi, g.n)
    control = frozenset(v for v, p in enumerate(phi) if p >= threshold)
    if strict and not control:
        raise ArithmeticError("No control point: some contribution must reach chi/|V|")
    return EulerReport(
        chi=chi,
        orientable=orientable,
        genus=genus,
        phi=phi,
        control_points=control,
        face_sizes=tuple(faces.sizes),
    )
