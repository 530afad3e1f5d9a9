"""Parent and path tables for both schemes, kept as plain data.

Exponent offsets are relative to a base that the table leaves ambiguous
(tree index or sector index); ``interpret`` decides which base applies.
Path formulas take ``(X, Y, k)`` in some coordinate frame, also chosen by
``interpret``, and return ``(direction, steps)`` pairs in the tree-1 frame.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .sectors import Scheme

__all__ = [
    "ParentRow",
    "PathRow",
    "PARENT_ROWS",
    "PATH_ROWS",
    "PRINTED_BASE",
    "CLASS_LABELS",
]


@dataclass(frozen=True)
class ParentRow:
    classes: tuple[str, ...]
    parent: int
    children: tuple[int, ...]

    @property
    def label(self) -> str:
        return " ∪ ".join(self.classes)


Word = list[tuple[int, int]]


@dataclass(frozen=True)
class PathRow:
    classes: tuple[str, ...]
    formula: Callable[[int, int, int], Word]
    text: str

    @property
    def label(self) -> str:
        return " ∪ ".join(self.classes)


_P = ParentRow

PARENT_ROWS: dict[Scheme, tuple[ParentRow, ...]] = {
    Scheme.EDNIST: (
        _P(("B1",), 2, (-1, 0, 4)),
        _P(("B2\\S2",), 3, (0, 2)),
        _P(("S2",), 3, (2,)),
        _P(("B3", "B5"), -1, ()),
        _P(("B4\\S4",), 1, ()),
        _P(("S4",), 1, (2,)),
        _P(("B6", "T2", "T5"), -1, (2,)),
        _P(("T1", "T4\\L4"), 3, (0,)),
        _P(("T3", "T6\\L6"), 1, (4,)),
        _P(("L4",), 3, ()),
        _P(("L6",), 1, (2, 4)),
    ),
    Scheme.IST: (
        _P(("B1",), 2, (-1, 0, 4)),
        _P(("B2", "B6"), 2, ()),
        _P(("B3", "T2", "T5"), 2, (-1,)),
        _P(("L3",), 1, (-1, 4)),
        _P(("T3\\L3", "T6"), 1, (4,)),
        _P(("B4",), 1, ()),
        _P(("L4",), 3, ()),
        _P(("T1", "T4\\L4"), 3, (0,)),
        _P(("B5\\S",), 3, (-1, 0)),
        _P(("S",), 3, (-1,)),
    ),
}

# The exponent base each table is printed with.
PRINTED_BASE: dict[Scheme, str] = {Scheme.EDNIST: "sector", Scheme.IST: "tree"}

CLASS_LABELS: dict[Scheme, tuple[str, ...]] = {
    s: tuple(c for row in rows for c in row.classes) for s, rows in PARENT_ROWS.items()
}

# direction exponents
_1, _R, _MINUS1, _MINUS_R2 = 0, 1, 3, 5


def _row(classes: tuple[str, ...], text: str):
    def deco(fn: Callable[[int, int, int], Word]) -> PathRow:
        return PathRow(classes, fn, text)

    return deco


@_row(("B1",), "(1)^x")
def _ed_b1(X, Y, k):
    return [(_1, X)]


@_row(("T1",), "(1)^x (ρ)^y")
def _ed_t1(X, Y, k):
    return [(_1, X), (_R, Y)]


@_row(("B2\\S2", "S2"), "(ρ)^y")
def _ed_b2(X, Y, k):
    return [(_R, Y)]


@_row(("T2", "B3"), "(ρ)^|y| (-1)^|x|")
def _ed_t2(X, Y, k):
    return [(_R, abs(Y)), (_MINUS1, abs(X))]


@_row(("T3", "B4\\S4", "S4"), "(1)^(k-|x|+1) (-ρ²)^(k-y)")
def _ed_t3(X, Y, k):
    return [(_1, k - abs(X) + 1), (_MINUS_R2, k - Y)]


@_row(("L4", "T4\\L4"), "(1)^(k-|x|) (ρ)^(k-|y|+1)")
def _ed_t4(X, Y, k):
    return [(_1, k - abs(X)), (_R, k - abs(Y) + 1)]


@_row(("L6", "T6\\L6"), "(1)^x (-ρ²)^y")
def _ed_t6(X, Y, k):
    return [(_1, X), (_MINUS_R2, Y)]


@_row(("B6", "T5", "B5"), "(1) (-ρ²)^|y| (-1)^(|x|+1)")
def _ed_t5(X, Y, k):
    return [(_1, 1), (_MINUS_R2, abs(Y)), (_MINUS1, abs(X) + 1)]


@_row(("B1",), "(1)^x")
def _ist_b1(X, Y, k):
    return [(_1, X)]


@_row(("T1", "B2"), "(1)^x (ρ)^y")
def _ist_t1(X, Y, k):
    return [(_1, X), (_R, Y)]


@_row(("T6",), "(1)^x (-ρ²)^y")
def _ist_t6(X, Y, k):
    return [(_1, X), (_MINUS_R2, Y)]


@_row(("B4", "T3\\L3", "L3"), "(1)^(k-|x|+1) (-ρ²)^(k-y)")
def _ist_t3(X, Y, k):
    return [(_1, k - abs(X) + 1), (_MINUS_R2, k - Y)]


@_row(("B3", "T2"), "(1)^k (-ρ²)^(k-y) (1)^(x+1)")
def _ist_t2(X, Y, k):
    return [(_1, k), (_MINUS_R2, k - Y), (_1, X + 1)]


@_row(("L4", "T4\\L4"), "(1)^(k-|x|) (ρ)^(k-y+1)")
def _ist_t4(X, Y, k):
    return [(_1, k - abs(X)), (_R, k - Y + 1)]


@_row(("B5\\S", "S", "T5", "B6"), "(1)^k (ρ)^(k-|y|+1) (1)^x")
def _ist_t5(X, Y, k):
    return [(_1, k), (_R, k - abs(Y) + 1), (_1, X)]


PATH_ROWS: dict[Scheme, tuple[PathRow, ...]] = {
    Scheme.EDNIST: (_ed_b1, _ed_t1, _ed_b2, _ed_t2, _ed_t3, _ed_t4, _ed_t6, _ed_t5),
    Scheme.IST: (_ist_b1, _ist_t1, _ist_t6, _ist_t3, _ist_t2, _ist_t4, _ist_t5),
}
