"""Fault-injection experiments over a scheme's spanning trees.

For a fault set ``F`` the metric is ``1 + max_v min_t depth_t(v)``, where ``v``
ranges over healthy non-root nodes and ``t`` over trees whose root-to-``v``
path avoids ``F``.  Fault sets are packed into bitmasks (one bit per node or
link) so whole batches are scored with numpy at once.
"""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arith import EJInt, Generator
from .spantree import Scheme, build_all
from .spantree.tree import SpanningTree
from .topology import FaultSet, build as build_network

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "BudgetExceeded",
    "Policy",
    "SimRecord",
    "metric",
    "experiment",
    "table_sweep",
    "records_to_csv",
    "CSV_COLUMNS",
    "budget",
]

DEFAULT_BUDGET = 10**7
DEFAULT_SAMPLES = 10_000
DEFAULT_SEED = 2024
BATCH = 1 << 15
CSV_COLUMNS = ("scheme", "a", "f", "policy", "avg_max", "max_max", "sets", "links", "unreachable")


class BudgetExceeded(RuntimeError):
    pass


def budget() -> int:
    raw = os.environ.get("EJST_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"EJST_BUDGET must be an integer, got {raw!r}") from None
    if val < 0:
        raise ValueError("EJST_BUDGET must be non-negative")
    return val


@dataclass(frozen=True)
class Policy:
    """``exhaustive``, ``sampled`` (count, seed), or ``auto`` (exhaustive within budget)."""

    kind: str = "auto"
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.kind not in ("auto", "exhaustive", "sampled"):
            raise ValueError(f"unknown policy {self.kind!r}")
        if self.samples < 1:
            raise ValueError("sample count must be positive")

    @classmethod
    def exhaustive(cls) -> Policy:
        return cls("exhaustive")

    @classmethod
    def sampled(cls, samples: int, seed: int = DEFAULT_SEED) -> Policy:
        return cls("sampled", samples, seed)


@dataclass(frozen=True)
class SimRecord:
    scheme: Scheme
    a: int
    f: int
    policy: str
    total: int
    sets: int
    max_max: int
    links: int = 0
    unreachable: int = 0
    bound_violations: int = 0

    @property
    def avg_max(self) -> Fraction:
        return Fraction(self.total, self.sets) if self.sets else Fraction(0)

    @property
    def avg_text(self) -> str:
        """Average truncated (not rounded) to three decimals."""
        return _truncate3(self.avg_max)

    def row(self) -> list:
        return [
            self.scheme.value,
            self.a,
            self.f,
            self.policy,
            self.avg_text,
            self.max_max,
            self.sets,
            self.links,
            self.unreachable,
        ]


def _truncate3(x: Fraction) -> str:
    milli = math.floor(x * 1000)
    return f"{milli // 1000}.{milli % 1000:03d}"


class _Scorer:
    """Per-node path masks for one set of trees, over nodes and (optionally) links."""

    def __init__(self, trees: Sequence[SpanningTree], with_links: bool) -> None:
        g = trees[0].gen
        net = build_network(g)
        root = trees[0].root
        self.nodes = [v for v in net.nodes if v != root]
        self.node_bit = {v: i for i, v in enumerate(self.nodes)}
        self.links: list[frozenset] = []
        self.link_bit: dict[frozenset, int] = {}
        if with_links:
            seen = set()
            for u, v, _ in net.edges():
                e = frozenset((u, v))
                if e not in seen:
                    seen.add(e)
                    self.link_bit[e] = len(self.nodes) + len(self.links)
                    self.links.append(e)
        n_items = len(self.nodes) + len(self.links)
        self.words = max(1, (n_items + 63) // 64)
        # options[i]: list of (depth, mask words) sorted by depth then tree order
        self.options: list[list[tuple[int, np.ndarray]]] = []
        for v in self.nodes:
            opts = []
            for t in trees:
                path = t.path(v)
                bits = [self.node_bit[u] for u in path[1:]]
                if with_links:
                    bits += [self.link_bit[frozenset(e)] for e in zip(path, path[1:])]
                opts.append((len(path) - 1, self._mask(bits)))
            opts.sort(key=lambda o: o[0])
            self.options.append(opts)

    def _mask(self, bits: Iterable[int]) -> np.ndarray:
        m = np.zeros(self.words, dtype=np.uint64)
        for b in bits:
            m[b // 64] |= np.uint64(1) << np.uint64(b % 64)
        return m

    def pack(self, items: np.ndarray) -> np.ndarray:
        """Rows of item indices -> rows of mask words."""
        B = items.shape[0]
        out = np.zeros((B, self.words), dtype=np.uint64)
        if items.size == 0:
            return out
        word = items // 64
        bit = np.left_shift(np.uint64(1), (items % 64).astype(np.uint64))
        for w in range(self.words):
            sel = np.where(word == w, bit, np.uint64(0))
            out[:, w] = np.bitwise_or.reduce(sel, axis=1)
        return out

    def score(self, F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per fault-set (metric, unreachable count)."""
        B = F.shape[0]
        worst = np.zeros(B, dtype=np.int64)
        unreachable = np.zeros(B, dtype=np.int64)
        for i, opts in enumerate(self.options):
            faulty = (F[:, i // 64] >> np.uint64(i % 64)) & np.uint64(1)
            depth = np.full(B, -1, dtype=np.int64)
            for L, m in opts:
                clear = ~np.any(F & m, axis=1)
                take = clear & (depth < 0)
                depth[take] = L
            healthy = faulty == 0
            unreachable += (healthy & (depth < 0)).astype(np.int64)
            np.maximum(worst, np.where(healthy, depth, 0), out=worst)
        return worst + 1, unreachable


def metric(
    trees: Sequence[SpanningTree], F: FaultSet | Iterable[EJInt] = (), *, strict: bool = True
) -> int:
    """Terminal-step-inclusive worst best-tree depth under fault set ``F``.

    A healthy node cut off on every tree raises ``ValueError`` when ``strict``;
    otherwise it is left out of the maximum.
    """
    if not isinstance(F, FaultSet):
        F = FaultSet.of(F)
    root = trees[0].root
    if root in F.nodes:
        raise ValueError("the root is in the fault set")
    worst = 0
    for v in trees[0].parent_dir:
        if v in F.nodes:
            continue
        best = min(
            (t.depths[v] for t in trees if not F.blocks_path(t.path(v))),
            default=None,
        )
        if best is None:
            if strict:
                raise ValueError(f"node {v} is unreachable on every tree")
            continue
        worst = max(worst, best)
    return worst + 1


def _n_sets(n_nodes: int, f: int, n_links: int, l: int) -> int:
    return math.comb(n_nodes, f) * math.comb(n_links, l)


def _exhaustive_batches(n_nodes: int, f: int, n_links: int, l: int) -> Iterator[np.ndarray]:
    node_c = combinations(range(n_nodes), f)
    if l:
        link_c = lambda: combinations(range(n_nodes, n_nodes + n_links), l)  # noqa: E731
        it = (a + b for a in node_c for b in link_c())
    else:
        it = node_c
    width = f + l
    while True:
        chunk = list(islice(it, BATCH))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(len(chunk), width)


def _sampled_batches(n_nodes: int, f: int, n_links: int, l: int, samples: int, seed: int) -> Iterator[np.ndarray]:
    rng = np.random.default_rng(seed)
    left = samples
    while left > 0:
        b = min(BATCH, left)
        left -= b
        parts = []
        if f:
            parts.append(np.argsort(rng.random((b, n_nodes)), axis=1)[:, :f])
        if l:
            parts.append(n_nodes + np.argsort(rng.random((b, n_links)), axis=1)[:, :l])
        yield np.concatenate(parts, axis=1) if parts else np.zeros((b, 0), dtype=np.int64)


def experiment(
    scheme: Scheme | str,
    a: int,
    f: int,
    policy: Policy | None = None,
    *,
    links: int = 0,
    construction: str = "resolved",
    trees: Sequence[SpanningTree] | None = None,
) -> SimRecord:
    """Aggregate the metric over fault sets of ``f`` nodes (and ``links`` links)."""
    scheme = Scheme.parse(scheme)
    policy = policy or Policy()
    if not 0 <= f <= 5:
        raise ValueError("fault count must be in 0..5")
    if links < 0:
        raise ValueError("link fault count must be non-negative")
    g = Generator(a)
    trees = trees if trees is not None else build_all(scheme, g, construction=construction)
    sc = _Scorer(trees, with_links=links > 0)
    n_nodes, n_links = len(sc.nodes), len(sc.links)
    if f > n_nodes or links > n_links:
        raise ValueError(f"cannot place {f} node / {links} link faults in α={g}")
    count = _n_sets(n_nodes, f, n_links, links)
    kind = policy.kind
    if kind == "auto":
        kind = "exhaustive" if count <= budget() else "sampled"
    if kind == "exhaustive":
        if count > budget():
            raise BudgetExceeded(
                f"{count} fault sets exceed the exhaustive budget of {budget()} (set EJST_BUDGET)"
            )
        batches = _exhaustive_batches(n_nodes, f, n_links, links)
        label = "exhaustive"
    else:
        batches = _sampled_batches(n_nodes, f, n_links, links, policy.samples, policy.seed)
        label = f"sampled({policy.samples};seed={policy.seed})"
    total = sets = unreachable = violations = 0
    max_max = 0
    # best-tree depth can never beat the lattice distance nor exceed the deepest tree
    lo, hi = g.k + 1, max(t.depth for t in trees) + 1
    for items in batches:
        m, u = sc.score(sc.pack(items))
        total += int(m.sum())
        sets += len(m)
        max_max = max(max_max, int(m.max()))
        unreachable += int(u.sum())
        violations += int(np.count_nonzero((m < lo) | (m > hi)))
    return SimRecord(scheme, a, f, label, total, sets, max_max, links, unreachable, violations)


def table_sweep(
    scheme: Scheme | str,
    a_range: Iterable[int],
    f_range: Iterable[int],
    policy: Policy | None = None,
    *,
    links: int = 0,
    construction: str = "resolved",
) -> list[SimRecord]:
    f_list = list(f_range)
    out = []
    for a in a_range:
        if not f_list:
            continue
        trees = build_all(scheme, a, construction=construction)
        for f in f_list:
            out.append(experiment(scheme, a, f, policy, links=links, construction=construction, trees=trees))
    return out


def records_to_csv(records: Sequence[SimRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()

