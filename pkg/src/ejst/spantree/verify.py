"""Property checks on spanning trees, each returning a ``Report``."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from ..arith import EJInt
from ..topology import build as build_network
from .sectors import Scheme
from .tree import PathWord, SpanningTree, expand_word

__all__ = [
    "Report",
    "verify_spanning",
    "verify_node_independent",
    "verify_edge_disjoint",
    "verify_path_consistency",
    "unused_edges",
    "render_reports",
]

_KEEP = 5  # violations kept per report


@dataclass
class Report:
    name: str
    passed: bool = True
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    n_violations: int = 0
    notes: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.passed = False
        self.n_violations += 1
        if len(self.violations) < _KEEP:
            self.violations.append(msg)

    @property
    def first(self) -> str | None:
        return self.violations[0] if self.violations else None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"[{status}] {self.name} ({self.checked} checked"
        if not self.passed:
            s += f", {self.n_violations} violations; first: {self.first}"
        return s + ")"


def verify_spanning(tree: SpanningTree) -> Report:
    label = f"spanning tree t={tree.t}" if tree.t else "spanning tree"
    rep = Report(label)
    net = build_network(tree.gen)
    expected = len(net) - 1
    if len(tree.parent_dir) != expected:
        rep.fail(f"{len(tree.parent_dir)} parent edges, expected {expected}")
    if tree.root in tree.parent_dir:
        rep.fail(f"root {tree.root} has a parent")
    missing = [v for v in net.nodes if v != tree.root and v not in tree.parent_dir]
    for v in missing:
        rep.fail(f"node {v} has no parent")
    for v, d in tree.parent_dir.items():
        rep.checked += 1
        if v not in net:
            rep.fail(f"{v} is not a network node")
            continue
        if tree.parent[v] == v:
            rep.fail(f"self-loop at {v}")
    try:
        tree.depths
    except ValueError as exc:
        rep.fail(str(exc))
    return rep


def _internal(tree: SpanningTree, v: EJInt) -> list[EJInt]:
    return tree.path(v)[1:-1]


def verify_node_independent(trees: Sequence[SpanningTree]) -> Report:
    rep = Report(f"node-independent ({len(trees)} trees)")
    if not trees:
        return rep
    roots = {t.root for t in trees}
    if len(roots) != 1:
        rep.fail(f"trees have different roots: {sorted(roots)}")
        return rep
    root = trees[0].root
    net = build_network(trees[0].gen)
    for u in net.nodes:
        if u == root:
            continue
        rep.checked += 1
        try:
            sets = [set(_internal(t, u)) for t in trees]
        except (KeyError, ValueError) as exc:
            rep.fail(f"node {u}: {exc}")
            continue
        for (i, a), (j, b) in combinations(enumerate(sets), 2):
            shared = a & b
            if shared:
                rep.fail(
                    f"node {u}: trees {i + 1} and {j + 1} share "
                    + ", ".join(str(s) for s in sorted(shared))
                )
    return rep


def verify_edge_disjoint(trees: Sequence[SpanningTree], *, directed: bool | None = None) -> Report:
    """Undirected disjointness for EDNIST, directed for IST (unless overridden)."""
    if directed is None:
        directed = bool(trees) and trees[0].scheme is Scheme.IST
    kind = "directed" if directed else "undirected"
    rep = Report(f"edge-disjoint, {kind} ({len(trees)} trees)")
    owner: dict = {}
    for i, t in enumerate(trees, 1):
        edges = t.directed_edges() if directed else t.edges()
        for e in edges:
            rep.checked += 1
            if e in owner:
                ends = " -> ".join(map(str, e)) if directed else " -- ".join(map(str, sorted(e)))
                rep.fail(f"edge {ends} in trees {owner[e]} and {i}")
            else:
                owner[e] = i
    return rep


def verify_path_consistency(
    tree: SpanningTree, word_fn: Callable[[EJInt], PathWord] | None = None
) -> Report:
    """Compare each tree path with the expansion of its path word."""
    if word_fn is None:
        from .build import path_word

        def word_fn(v: EJInt) -> PathWord:
            return path_word(tree.scheme, tree.gen, tree.t or 1, v - tree.root, tree=tree)

    rep = Report(f"path-consistency t={tree.t}")
    for v in tree.parent_dir:
        rep.checked += 1
        try:
            walk = expand_word(word_fn(v), tree.gen, tree.root)
        except ValueError as exc:
            rep.fail(f"node {v}: {exc}")
            continue
        if walk != tree.path(v):
            rep.fail(f"node {v}: word walk {[str(w) for w in walk]} != tree path")
    return rep


def unused_edges(trees: Sequence[SpanningTree]) -> list[tuple[EJInt, EJInt]]:
    """Network edges carried by no tree, in canonical order."""
    net = build_network(trees[0].gen)
    used = set()
    for t in trees:
        used |= t.edges()
    out = []
    seen = set()
    for u, v, _ in net.edges():
        e = frozenset((u, v))
        if e not in used and e not in seen:
            seen.add(e)
            out.append((u, v))
    return out


def render_reports(reports: Sequence[Report]) -> str:
    lines = []
    for r in reports:
        lines.append(r.line())
        lines.extend(f"    {v}" for v in r.violations[1:])
        lines.extend(f"    note: {n}" for n in r.notes)
    return "\n".join(lines)


def edge_multiplicity(trees: Sequence[SpanningTree]) -> Counter:
    c: Counter = Counter()
    for t in trees:
        c.update(t.edges())
    return c
