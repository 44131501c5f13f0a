from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List

from emn.errors import DomainError


class Kind(str, Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"


@dataclass(frozen=True)
class Surface:
    """Closed surface S_g (orientable) or N_g (non-orientable, g >= 1)."""

    kind: Kind
    genus: int

    def __post_init__(self):
        if self.kind is Kind.ORIENTABLE and self.genus < 0:
            raise DomainError(f"Orientable genus must be >= 0, got {self.genus}")
        if self.kind is Kind.NON_ORIENTABLE and self.genus < 1:
            raise DomainError(f"Non-orientable genus must be >= 1, got {self.genus}")

    @classmethod
    def orientable(cls, genus: int) -> "Surface":
        return cls(Kind.ORIENTABLE, genus)

    @classmethod
    def non_orientable(cls, genus: int) -> "Surface":
        return cls(Kind.NON_ORIENTABLE, genus)

    @classmethod
    def from_chi(cls, kind: Kind, chi_value: int) -> "Surface":
        if kind is Kind.ORIENTABLE:
            if chi_value > 2 or chi_value % 2:
                raise DomainError(f"No orientable surface has Euler characteristic {chi_value}")
            return cls(kind, (2 - chi_value) // 2)
        if chi_value > 1:
            raise DomainError(f"No non-orientable surface has Euler characteristic {chi_value}")
        return cls(kind, 2 - chi_value)

    @property
    def name(self) -> str:
        prefix = "S" if self.kind is Kind.ORIENTABLE else "N"
        return f"{prefix}{self.genus}"

    @property
    def is_sphere(self) -> bool:
        return self.kind is Kind.ORIENTABLE and self.genus == 0

    def __str__(self) -> str:
        return self.name


def chi(s: Surface) -> int:
    if s.kind is Kind.ORIENTABLE:
        return 2 - 2 * s.genus
    return 2 - s.genus


def mu(s: Surface) -> int:
    """Smallest k such that no graph embedded on ``s`` is k-extendable.

    The closed formula gives 2 at the sphere; the sphere value is 3 because no
    planar graph is E(2,1) while the planar cube is E(1,1).
    """
    if s.is_sphere:
        return 3
    return 2 + math.isqrt(4 - 2 * chi(s))


def _require_negative_chi(s: Surface) -> int:
    value = chi(s)
    if value >= 0:
        raise DomainError(f"The constant c is only defined for chi <= -1; {s.name} has chi = {value}")
    return value


def c_constant(s: Surface) -> Fraction:
    value = _require_negative_chi(s)
    return 4 - Fraction(2 * value, mu(s) + 1)


def claim3_holds(s: Surface) -> bool:
    """floor(c) <= mu, in exact arithmetic."""
    return math.floor(c_constant(s)) <= mu(s)


def theorem2_threshold(k: int, s: Surface) -> int:
    """Vertex count from which an embedded graph cannot be E(k-1,1).

    Floor division rounds toward -inf, so a non-positive value means every
    graph on the surface qualifies.
    """
    if k < 4:
        raise DomainError(f"The vertex-count threshold needs k >= 4, got {k}")
    if s.kind is Kind.ORIENTABLE:
        return (8 * s.genus - 8) // (k - 3) + 1
    return (4 * s.genus - 8) // (k - 3) + 1


def surfaces_with_chi(chi_value: int) -> List[Surface]:
    found: List[Surface] = []
    for kind in (Kind.ORIENTABLE, Kind.NON_ORIENTABLE):
        try:
            found.append(Surface.from_chi(kind, chi_value))
        except DomainError:
            pass
    return found


def claim3_sweep(chi_min: int, chi_max: int = -1) -> List[Surface]:
    """Surfaces with chi in [chi_min, chi_max] where floor(c) > mu; expected empty."""
    if chi_max > -1:
        raise DomainError(f"The sweep covers chi <= -1 only, got chi_max = {chi_max}")
    if chi_min > chi_max:
        raise DomainError(f"Empty sweep range [{chi_min}, {chi_max}]")
    failing: List[Surface] = []
    for value in range(chi_max, chi_min - 1, -1):
        for s in surfaces_with_chi(value):
            if not claim3_holds(s):
                failing.append(s)
    return failing
