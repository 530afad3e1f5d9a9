"""Rooted spanning trees stored as a parent direction per node."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterator, Mapping

from ..arith import EJInt, Generator, ZERO, reduce, unit_pow
from ..topology import build as build_network
from .sectors import Scheme

__all__ = ["SpanningTree", "PathWord", "rotate_tree", "tree_path", "depth", "word_of_path", "expand_word"]

PathWord = list[tuple[int, int]]


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """A spanning tree of ``EJ(gen)``.

    ``parent_dir[v] = d`` means the parent of ``v`` is ``reduce(v + rho**d)``.
    ``offset`` is the rotation ``c`` relative to tree 1; ``t`` is the tree
    index when that rotation is one of the scheme's own.
    """

    scheme: Scheme
    gen: Generator
    offset: int
    root: EJInt
    parent_dir: Mapping[EJInt, int]
    interpretation_id: str = field(default="")

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", self.offset % 6)
        if not isinstance(self.parent_dir, MappingProxyType):
            object.__setattr__(self, "parent_dir", MappingProxyType(dict(self.parent_dir)))

    @property
    def t(self) -> int | None:
        return self.scheme.tree_of_offset(self.offset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return (
            self.gen == other.gen
            and self.root == other.root
            and dict(self.parent_dir) == dict(other.parent_dir)
        )

    def __hash__(self) -> int:
        return hash((self.gen, self.root, len(self.parent_dir)))

    def __repr__(self) -> str:
        return (
            f"SpanningTree({self.scheme.value}, t={self.t}, α={self.gen}, root={self.root}, "
            f"id={self.interpretation_id!r})"
        )

    @cached_property
    def parent(self) -> Mapping[EJInt, EJInt]:
        return MappingProxyType(
            {v: reduce(v + unit_pow(d), self.gen) for v, d in self.parent_dir.items()}
        )

    @cached_property
    def children(self) -> Mapping[EJInt, tuple[EJInt, ...]]:
        kids: dict[EJInt, list[EJInt]] = {}
        for v, p in self.parent.items():
            kids.setdefault(p, []).append(v)
        order = build_network(self.gen).index
        return MappingProxyType({p: tuple(sorted(vs, key=order.__getitem__)) for p, vs in kids.items()})

    @cached_property
    def depths(self) -> Mapping[EJInt, int]:
        """Depth of each node; raises ``ValueError`` on a cycle or a dangling chain."""
        out = {self.root: 0}
        parent = self.parent
        for v in parent:
            chain = []
            u = v
            while u not in out:
                if u in chain or u not in parent:
                    raise ValueError(f"parent chain from {v} does not reach root {self.root}")
                chain.append(u)
                u = parent[u]
            d = out[u]
            for w in reversed(chain):
                d += 1
                out[w] = d
        return MappingProxyType(out)

    @property
    def depth(self) -> int:
        return max(self.depths.values())

    def edges(self) -> set[frozenset[EJInt]]:
        return {frozenset((v, p)) for v, p in self.parent.items()}

    def directed_edges(self) -> set[tuple[EJInt, EJInt]]:
        """Edges oriented child to parent."""
        return set(self.parent.items())

    def path(self, v: EJInt) -> list[EJInt]:
        if v != self.root and v not in self.parent_dir:
            raise KeyError(f"{v} is not a node of this tree")
        out = [v]
        parent = self.parent
        while v != self.root:
            v = parent[v]
            out.append(v)
            if len(out) > len(parent) + 1:
                raise ValueError("cycle in parent map")
        out.reverse()
        return out

    def nodes(self) -> Iterator[EJInt]:
        yield self.root
        yield from self.parent_dir

    def translate(self, by: EJInt) -> SpanningTree:
        g = self.gen
        return SpanningTree(
            self.scheme,
            g,
            self.offset,
            reduce(self.root + by, g),
            {reduce(v + by, g): d for v, d in self.parent_dir.items()},
            self.interpretation_id,
        )


def rotate_tree(tree: SpanningTree, m: int) -> SpanningTree:
    """Multiply every address by ``rho**m``; directions turn with them."""
    u = unit_pow(m)
    g = tree.gen
    return SpanningTree(
        tree.scheme,
        g,
        tree.offset + m,
        reduce(tree.root * u, g),
        {reduce(v * u, g): (d + m) % 6 for v, d in tree.parent_dir.items()},
        tree.interpretation_id,
    )


def tree_path(tree: SpanningTree, v: EJInt) -> list[EJInt]:
    return tree.path(v)


def depth(tree: SpanningTree) -> int:
    return tree.depth


def word_of_path(path: list[EJInt], g: Generator) -> PathWord:
    """Run-length encode the step directions along ``path``."""
    word: PathWord = []
    for u, v in zip(path, path[1:]):
        d = next((m for m in range(6) if reduce(u + unit_pow(m), g) == v), None)
        if d is None:
            raise ValueError(f"{u} and {v} are not adjacent")
        if word and word[-1][0] == d:
            word[-1] = (d, word[-1][1] + 1)
        else:
            word.append((d, 1))
    return word


def expand_word(word: PathWord, g: Generator, start: EJInt = ZERO) -> list[EJInt]:
    out = [start]
    v = start
    for d, n in word:
        if n < 0:
            raise ValueError(f"negative step count in {word}")
        for _ in range(n):
            v = reduce(v + unit_pow(d), g)
            out.append(v)
    return out
