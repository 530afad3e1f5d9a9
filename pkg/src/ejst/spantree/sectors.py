"""Sector classification of network nodes for the two tree schemes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..arith import EJInt, Generator, reduce, unit_pow

__all__ = ["Scheme", "SectorClass", "sector_coords", "classify", "class_label"]


class Scheme(str, Enum):
    EDNIST = "ednist"
    IST = "ist"

    @classmethod
    def parse(cls, value: "str | Scheme") -> "Scheme":
        if isinstance(value, Scheme):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown scheme {value!r}; expected 'ednist' or 'ist'") from None

    @property
    def n_trees(self) -> int:
        return 3 if self is Scheme.EDNIST else 6

    @property
    def step(self) -> int:
        """Rotation between consecutive trees, in sixths of a turn."""
        return 2 if self is Scheme.EDNIST else 1

    def offset(self, t: int) -> int:
        if not 1 <= t <= self.n_trees:
            raise ValueError(f"{self.value} tree index must be in 1..{self.n_trees}, got {t}")
        return self.step * (t - 1)

    def tree_of_offset(self, c: int) -> int | None:
        c %= 6
        if c % self.step:
            return None
        return c // self.step + 1

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SectorClass:
    scheme: Scheme
    label: str
    x: int
    y: int
    j: int

    def address(self, g: Generator) -> EJInt:
        return reduce(unit_pow(self.j - 1) * self.x + unit_pow(self.j) * self.y, g)


def sector_coords(v: EJInt) -> tuple[int, int, int]:
    """``(j, x, y)`` with ``v = x rho**(j-1) + y rho**j``, ``x > 0``, ``y >= 0``."""
    if not v:
        raise ValueError("node 0 has no sector")
    for j in range(1, 7):
        w = v * unit_pow(1 - j)
        if w.x > 0 and w.y >= 0:
            return j, w.x, w.y
    raise AssertionError(f"no sector for {v}")  # pragma: no cover


def class_label(scheme: Scheme, d: int, x: int, y: int, k: int) -> str:
    """Name of the partition set holding sector-``d`` coordinates ``(x, y)``."""
    if scheme is Scheme.EDNIST:
        if y == 0:
            if d == 2:
                return "S2" if x == k else "B2\\S2"
            if d == 4:
                return "S4" if x == k else "B4\\S4"
            return f"B{d}"
        if d == 4:
            return "L4" if y == 1 else "T4\\L4"
        if d == 6:
            return "L6" if y == 1 else "T6\\L6"
        return f"T{d}"
    if y == 0:
        if d == 5:
            return "S" if x == 1 else "B5\\S"
        return f"B{d}"
    if d == 3:
        return "L3" if y == 1 else "T3\\L3"
    if d == 4:
        return "L4" if y == 1 else "T4\\L4"
    return f"T{d}"


def classify(scheme: Scheme | str, g: Generator, t: int, v: EJInt) -> SectorClass:
    scheme = Scheme.parse(scheme)
    if weight_ok(v, g) is False:
        raise ValueError(f"{v} is not canonical for {g}")
    c = scheme.offset(t)
    j, x, y = sector_coords(v)
    d = (j - c - 1) % 6 + 1
    return SectorClass(scheme, class_label(scheme, d, x, y, g.k), x, y, j)


def weight_ok(v: EJInt, g: Generator) -> bool:
    return reduce(v, g) == v
