"""Dense EJ networks, their cross products, and fault sets."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .arith import EJInt, Generator, ZERO, reduce, unit_pow, weight

__all__ = ["DenseEJ", "ProductEJ", "FaultSet", "build", "product"]


def _canonical_key(v: EJInt) -> tuple[int, int, int]:
    return (weight(v), v.x, v.y)


class DenseEJ:
    """The EJ network generated by ``a + (a+1) rho``.

    Nodes are the canonical residues (weight <= k) ordered by
    ``(weight, x, y)``.  Adjacency is computed on demand.
    """

    def __init__(self, gen: Generator) -> None:
        self.gen = gen
        k = gen.k
        pts = [
            EJInt(x, y)
            for x in range(-k, k + 1)
            for y in range(-k, k + 1)
            if weight(EJInt(x, y)) <= k
        ]
        pts.sort(key=_canonical_key)
        if len(pts) != gen.norm:
            raise ArithmeticError(f"hexagon of radius {k} has {len(pts)} points, norm is {gen.norm}")
        # Distinct residues: every nonzero multiple of alpha has weight >= 2k+1.
        if min(weight(gen.alpha * unit_pow(m)) for m in range(6)) != 2 * k + 1:
            raise ArithmeticError(f"{gen} does not give a perfect code")
        self.nodes: tuple[EJInt, ...] = tuple(pts)
        self.index: dict[EJInt, int] = {v: i for i, v in enumerate(pts)}

    @property
    def k(self) -> int:
        return self.gen.k

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, v: object) -> bool:
        return v in self.index

    def __repr__(self) -> str:
        return f"DenseEJ({self.gen}, N={len(self)})"

    def _check(self, v: EJInt) -> None:
        if v not in self.index:
            raise KeyError(f"{v} is not a canonical node of EJ({self.gen})")

    def step(self, v: EJInt, d: int) -> EJInt:
        return reduce(v + unit_pow(d), self.gen)

    def neighbors(self, v: EJInt) -> list[tuple[int, EJInt]]:
        self._check(v)
        return [(d, self.step(v, d)) for d in range(6)]

    def is_wraparound(self, u: EJInt, d: int) -> bool:
        w = u + unit_pow(d)
        return w != reduce(w, self.gen)

    def edges(self) -> Iterator[tuple[EJInt, EJInt, int]]:
        """Each undirected edge once, as ``(u, v, d)`` with ``v = u + rho**d``, d in 0..2."""
        for u in self.nodes:
            for d in range(3):
                yield u, self.step(u, d), d

    @cached_property
    def neighbor_table(self) -> tuple[tuple[int, ...], ...]:
        """``neighbor_table[i][d]`` is the ordinal of node ``i``'s neighbour along ``d``."""
        return tuple(
            tuple(self.index[self.step(v, d)] for d in range(6)) for v in self.nodes
        )

    def bfs(self, src: EJInt) -> dict[EJInt, int]:
        self._check(src)
        table = self.neighbor_table
        dist = [-1] * len(self)
        s = self.index[src]
        dist[s] = 0
        q = deque([s])
        while q:
            i = q.popleft()
            for j in table[i]:
                if dist[j] < 0:
                    dist[j] = dist[i] + 1
                    q.append(j)
        return {v: dist[i] for i, v in enumerate(self.nodes)}

    def distance(self, u: EJInt, v: EJInt) -> int:
        self._check(v)
        return self.bfs(u)[v]

    def distance_distribution(self) -> list[int]:
        counts = [0] * (self.k + 1)
        for d in self.bfs(ZERO).values():
            counts[d] += 1
        return counts

    def translate(self, v: EJInt, by: EJInt) -> EJInt:
        return reduce(v + by, self.gen)


def build(gen: Generator | int) -> DenseEJ:
    if isinstance(gen, int):
        gen = Generator(gen)
    return _build_cached(gen)


_CACHE: dict[Generator, DenseEJ] = {}


def _build_cached(gen: Generator) -> DenseEJ:
    net = _CACHE.get(gen)
    if net is None:
        net = _CACHE[gen] = DenseEJ(gen)
    return net


class ProductEJ:
    """Cross product of dense EJ layers, highest dimension first.

    Nothing of size ``prod N_i`` is materialised unless ``nodes()`` is iterated.
    """

    def __init__(self, layers: Sequence[DenseEJ]) -> None:
        if not layers:
            raise ValueError("a product needs at least one layer")
        self.layers: tuple[DenseEJ, ...] = tuple(layers)

    @property
    def dims(self) -> int:
        return len(self.layers)

    def __len__(self) -> int:
        return math.prod(len(L) for L in self.layers)

    @property
    def degree(self) -> int:
        return 6 * self.dims

    def __repr__(self) -> str:
        gens = " x ".join(str(L.gen) for L in self.layers)
        return f"ProductEJ({gens}, N={len(self)})"

    def nodes(self) -> Iterator[tuple[EJInt, ...]]:
        return itertools.product(*(L.nodes for L in self.layers))

    def __contains__(self, node: object) -> bool:
        if not isinstance(node, tuple) or len(node) != self.dims:
            return False
        return all(c in L for c, L in zip(node, self.layers))

    def index(self, node: tuple[EJInt, ...]) -> int:
        i = 0
        for c, L in zip(node, self.layers):
            i = i * len(L) + L.index[c]
        return i

    def node_at(self, i: int) -> tuple[EJInt, ...]:
        coords = []
        for L in reversed(self.layers):
            i, r = divmod(i, len(L))
            coords.append(L.nodes[r])
        return tuple(reversed(coords))

    def neighbors(self, node: tuple[EJInt, ...]) -> list[tuple[int, int, tuple[EJInt, ...]]]:
        """``(layer, direction, neighbour)`` triples; ``6 * dims`` of them."""
        if node not in self:
            raise KeyError(f"{node} is not a node of {self!r}")
        out = []
        for layer, (c, L) in enumerate(zip(node, self.layers)):
            for d in range(6):
                nb = list(node)
                nb[layer] = L.step(c, d)
                out.append((layer, d, tuple(nb)))
        return out

    def adjacent(self, u: tuple[EJInt, ...], v: tuple[EJInt, ...]) -> bool:
        diff = [i for i, (a, b) in enumerate(zip(u, v)) if a != b]
        if len(diff) != 1:
            return False
        i = diff[0]
        L = self.layers[i]
        return any(L.step(u[i], d) == v[i] for d in range(6))

    def edges(self) -> Iterator[tuple[tuple[EJInt, ...], tuple[EJInt, ...], int, int]]:
        for node in self.nodes():
            for layer, (c, L) in enumerate(zip(node, self.layers)):
                for d in range(3):
                    nb = list(node)
                    nb[layer] = L.step(c, d)
                    yield node, tuple(nb), layer, d


def product(nets: Iterable[DenseEJ | Generator | int]) -> ProductEJ:
    layers = [n if isinstance(n, DenseEJ) else build(n) for n in nets]
    return ProductEJ(layers)


def _link(u, v) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class FaultSet:
    """Faulty nodes and undirected faulty links."""

    nodes: frozenset = field(default_factory=frozenset)
    links: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, nodes: Iterable = (), links: Iterable[tuple] = ()) -> FaultSet:
        return cls(frozenset(nodes), frozenset(_link(u, v) for u, v in links))

    def __bool__(self) -> bool:
        return bool(self.nodes or self.links)

    def __len__(self) -> int:
        return len(self.nodes) + len(self.links)

    def node_faulty(self, v) -> bool:
        return v in self.nodes

    def link_faulty(self, u, v) -> bool:
        return _link(u, v) in self.links

    def blocks_path(self, path: Sequence, *, endpoints: bool = True) -> bool:
        """True if any node (optionally excluding the two ends) or link on ``path`` is faulty."""
        inner = path if endpoints else path[1:-1]
        if any(v in self.nodes for v in inner):
            return True
        return any(_link(u, v) in self.links for u, v in zip(path, path[1:]))

    def require_healthy(self, *nodes) -> None:
        bad = [v for v in nodes if v in self.nodes]
        if bad:
            raise ValueError(f"node(s) {', '.join(map(str, bad))} are in the fault set")
