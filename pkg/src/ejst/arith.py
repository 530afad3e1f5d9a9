"""Exact Eisenstein-Jacobi integer arithmetic.

An EJ integer ``x + y*rho`` is stored as the integer pair ``(x, y)`` with
``rho**2 = rho - 1``.  Every address in the package lives in this form;
inputs that use ``rho**2`` are normalised on the way in.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = [
    "EJInt",
    "Generator",
    "DIRECTION_NAMES",
    "ZERO",
    "ONE",
    "RHO",
    "unit_pow",
    "norm",
    "weight",
    "reduce",
    "congruent",
    "parse_address",
    "format_address",
    "direction_of",
    "units",
]


@dataclass(frozen=True, order=True, slots=True)
class EJInt:
    x: int
    y: int

    def __add__(self, other: EJInt) -> EJInt:
        return EJInt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: EJInt) -> EJInt:
        return EJInt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> EJInt:
        return EJInt(-self.x, -self.y)

    def __mul__(self, other: EJInt | int) -> EJInt:
        if isinstance(other, int):
            return EJInt(self.x * other, self.y * other)
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return EJInt(x1 * x2 - y1 * y2, x1 * y2 + y1 * x2 + y1 * y2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> EJInt:
        if n < 0:
            raise ValueError("negative powers are only defined for units; use unit_pow")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> EJInt:
        # conj(rho) = 1 - rho
        return EJInt(self.x + self.y, -self.y)

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    def __str__(self) -> str:
        return format_address(self)

    def pretty(self) -> str:
        """Human form such as ``-2-ρ`` or ``3ρ``."""
        x, y = self.x, self.y
        if y == 0:
            return str(x)
        coef = {1: "", -1: "-"}.get(y, str(y))
        r = f"{coef}ρ"
        if x == 0:
            return r
        return f"{x}{'' if r.startswith('-') else '+'}{r}"


ZERO = EJInt(0, 0)
ONE = EJInt(1, 0)
RHO = EJInt(0, 1)

# rho**m for m = 0..5: 1, rho, rho-1, -1, -rho, 1-rho
_UNITS = (EJInt(1, 0), EJInt(0, 1), EJInt(-1, 1), EJInt(-1, 0), EJInt(0, -1), EJInt(1, -1))
_UNIT_INDEX = {u: m for m, u in enumerate(_UNITS)}

DIRECTION_NAMES = ("1", "ρ", "ρ²", "-1", "-ρ", "-ρ²")


def unit_pow(m: int) -> EJInt:
    """``rho**m``; any integer exponent, taken mod 6."""
    return _UNITS[m % 6]


def direction_of(delta: EJInt) -> int:
    """Exponent ``m`` with ``rho**m == delta``; ``delta`` must be a unit."""
    try:
        return _UNIT_INDEX[delta]
    except KeyError:
        raise ValueError(f"{delta} is not a unit") from None


def norm(v: EJInt) -> int:
    return v.x * v.x + v.y * v.y + v.x * v.y


def weight(v: EJInt) -> int:
    """Hop distance from 0 to ``v`` in the infinite hexagonal lattice."""
    x, y = v.x, v.y
    if x * y >= 0:
        return abs(x) + abs(y)
    return max(abs(x), abs(y))


@dataclass(frozen=True)
class Generator:
    """Dense generator ``alpha = a + (a+1) rho``."""

    a: int

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or self.a < 1:
            raise ValueError(f"dense generator needs integer a >= 1, got {self.a!r}")

    @classmethod
    def from_ab(cls, a: int, b: int | None = None) -> Generator:
        if b is not None and b != a + 1:
            raise ValueError(f"only dense generators are supported (b must be a+1={a + 1}, got {b})")
        return cls(a)

    @property
    def b(self) -> int:
        return self.a + 1

    @property
    def k(self) -> int:
        return self.a

    @property
    def alpha(self) -> EJInt:
        return EJInt(self.a, self.a + 1)

    @property
    def norm(self) -> int:
        return 3 * self.a * self.a + 3 * self.a + 1

    def __str__(self) -> str:
        return f"{self.a}+{self.b}ρ"


def _nearest_quotient(v: EJInt, alpha: EJInt) -> EJInt:
    n = norm(alpha)
    num = v * alpha.conj()
    return EJInt(round(Fraction(num.x, n)), round(Fraction(num.y, n)))


def reduce(v: EJInt, g: Generator) -> EJInt:
    """Canonical residue of ``v`` modulo ``g.alpha``: the representative of weight <= k.

    Dense generators give a perfect code, so that representative is unique.
    """
    k = g.k
    if weight(v) <= k:
        return v
    alpha = g.alpha
    r = v - _nearest_quotient(v, alpha) * alpha
    shifts = [alpha * u for u in _UNITS]
    w = weight(r)
    while w > k:
        best = min((r - s for s in shifts), key=weight)
        bw = weight(best)
        if bw >= w:
            raise ArithmeticError(f"residue search stalled at {r} for {g}; generator not dense?")
        r, w = best, bw
    return r


def congruent(u: EJInt, v: EJInt, g: Generator) -> bool:
    return reduce(u - v, g) == ZERO


def parse_address(text: str) -> EJInt:
    """Parse ``"x,y"`` (x + y rho) or ``"x,y,z"`` (x + y rho + z rho**2)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3) or not all(parts):
        raise ValueError(f"address must be 'x,y' or 'x,y,z', got {text!r}")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"address components must be integers, got {text!r}") from None
    x, y = nums[0], nums[1]
    if len(nums) == 3:
        z = nums[2]
        x, y = x - z, y + z
    return EJInt(x, y)


def format_address(v: EJInt) -> str:
    return f"{v.x},{v.y}"


def units() -> Iterable[EJInt]:
    return iter(_UNITS)
