"""Spanning trees of cross-product networks, built layer by layer.

A node's parent moves its lowest-dimension coordinate that is not yet at the
layer root one step up that layer's tree; the top coordinate moves only once
everything below it sits at the root.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from ..arith import EJInt, Generator
from ..topology import ProductEJ, product
from .build import build_tree
from .sectors import Scheme
from .tree import SpanningTree
from .verify import Report

__all__ = ["ProductTree", "build_product_trees", "verify_product_spanning", "verify_product_edge_disjoint"]

Node = tuple[EJInt, ...]


@dataclass(frozen=True)
class ProductTree:
    scheme: Scheme
    t: int
    layers: tuple[SpanningTree, ...]  # highest dimension first

    @property
    def root(self) -> Node:
        return tuple(L.root for L in self.layers)

    @property
    def dims(self) -> int:
        return len(self.layers)

    def parent(self, node: Node) -> Node | None:
        for i in range(self.dims - 1, -1, -1):
            L = self.layers[i]
            if node[i] != L.root:
                return node[:i] + (L.parent[node[i]],) + node[i + 1 :]
        return None

    def path(self, node: Node) -> list[Node]:
        out = [node]
        while (p := self.parent(out[-1])) is not None:
            out.append(p)
        out.reverse()
        return out

    def depth_of(self, node: Node) -> int:
        return sum(L.depths[c] for L, c in zip(self.layers, node))

    @property
    def depth(self) -> int:
        return sum(L.depth for L in self.layers)

    def nodes(self) -> Iterator[Node]:
        return itertools.product(*(tuple(L.nodes()) for L in self.layers))

    def directed_edges(self) -> Iterator[tuple[Node, Node]]:
        for node in self.nodes():
            p = self.parent(node)
            if p is not None:
                yield node, p

    def edges(self) -> Iterator[frozenset]:
        for u, p in self.directed_edges():
            yield frozenset((u, p))


def build_product_trees(
    scheme: Scheme | str,
    layers: Sequence[Generator | int],
    n: int | None = None,
    *,
    construction: str = "resolved",
) -> list[ProductTree]:
    """One product tree per tree index.  ``n`` repeats a single generator."""
    scheme = Scheme.parse(scheme)
    gens = [Generator(g) if isinstance(g, int) else g for g in layers]
    if n is not None:
        if len(gens) == 1:
            gens = gens * n
        elif len(gens) != n:
            raise ValueError(f"got {len(gens)} layer generators for n={n}")
    if not gens:
        raise ValueError("need at least one layer")
    return [
        ProductTree(scheme, t, tuple(build_tree(scheme, g, t, construction=construction) for g in gens))
        for t in range(1, scheme.n_trees + 1)
    ]


def verify_product_spanning(tree: ProductTree, net: ProductEJ | None = None) -> Report:
    net = net or product([L.gen for L in tree.layers])
    rep = Report(f"product spanning tree t={tree.t}")
    n_edges = 0
    root = tree.root
    for node in net.nodes():
        if node == root:
            continue
        rep.checked += 1
        p = tree.parent(node)
        n_edges += 1
        if p is None or not net.adjacent(node, p):
            rep.fail(f"{node}: parent {p} is not adjacent")
    if n_edges != len(net) - 1:
        rep.fail(f"{n_edges} edges, expected {len(net) - 1}")
    # Each step strictly lowers the depth, so chains end at the root.
    for node in net.nodes():
        p = tree.parent(node)
        if p is not None and tree.depth_of(p) != tree.depth_of(node) - 1:
            rep.fail(f"{node}: depth does not drop toward the root")
    return rep


def verify_product_edge_disjoint(trees: Sequence[ProductTree], *, directed: bool | None = None) -> Report:
    if directed is None:
        directed = bool(trees) and trees[0].scheme is Scheme.IST
    kind = "directed" if directed else "undirected"
    rep = Report(f"product edge-disjoint, {kind} ({len(trees)} trees)")
    owner: dict = {}
    for tree in trees:
        edges = tree.directed_edges() if directed else tree.edges()
        for e in edges:
            rep.checked += 1
            if e in owner:
                rep.fail(f"edge {e} in trees {owner[e]} and {tree.t}")
            else:
                owner[e] = tree.t
    return rep

