"""Message routing along spanning trees, with fault-aware tree selection."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations

from .arith import DIRECTION_NAMES, EJInt, Generator, congruent, reduce, unit_pow
from .spantree import Scheme, build_tree, path_word
from .spantree.tree import SpanningTree
from .topology import FaultSet

__all__ = [
    "RoutingError",
    "RouteMessage",
    "Delivered",
    "Dropped",
    "Unreachable",
    "UNREACHABLE",
    "RouteChoice",
    "DeliveryPlan",
    "init_routing",
    "route_step",
    "run_route",
    "relative_path",
    "format_hop",
    "fault_tolerant_route",
    "split_delivery",
    "broadcast",
]


class RoutingError(ValueError):
    pass


def _gen(g: Generator | int) -> Generator:
    return Generator(g) if isinstance(g, int) else g


@dataclass(frozen=True)
class RouteMessage:
    dir: int
    steps: int
    remaining: tuple[tuple[int, int], ...]
    current: EJInt
    dest: EJInt
    gen: Generator
    hop_trace: tuple[EJInt, ...]
    tree: int = 0

    @property
    def hops(self) -> int:
        return len(self.hop_trace) - 1


@dataclass(frozen=True)
class Delivered:
    message: RouteMessage

    @property
    def hops(self) -> int:
        return self.message.hops

    @property
    def trace(self) -> tuple[EJInt, ...]:
        return self.message.hop_trace


@dataclass(frozen=True)
class Dropped:
    message: RouteMessage
    reason: str


def _forward(msg: RouteMessage, d: int, steps: int, remaining) -> RouteMessage:
    nxt = reduce(msg.current + unit_pow(d), msg.gen)
    return replace(
        msg, dir=d, steps=steps - 1, remaining=remaining, current=nxt, hop_trace=msg.hop_trace + (nxt,)
    )


def init_routing(
    S: EJInt,
    D: EJInt,
    g: Generator | int,
    scheme: Scheme | str,
    t: int,
    *,
    construction: str = "resolved",
) -> RouteMessage:
    """Source side: look up the word for ``D - S``, pop its first run, send one hop."""
    g = _gen(g)
    S, D = reduce(S, g), reduce(D, g)
    if S == D:
        raise RoutingError("source and destination coincide")
    word = path_word(scheme, g, t, reduce(D - S, g), construction=construction)
    (d, steps), rest = word[0], tuple(word[1:])
    start = RouteMessage(d, steps, rest, S, D, g, (S,), t)
    return _forward(start, d, steps, rest)


def route_step(msg: RouteMessage) -> Delivered | RouteMessage:
    """One node's handling of an incoming message."""
    if congruent(msg.current, msg.dest, msg.gen):
        return Delivered(msg)
    d, steps, rest = msg.dir, msg.steps, msg.remaining
    if steps == 0:
        if not rest:
            raise RoutingError(f"word exhausted at {msg.current} before reaching {msg.dest}")
        (d, steps), rest = rest[0], rest[1:]
    return _forward(msg, d, steps, rest)


def run_route(
    S: EJInt,
    D: EJInt,
    g: Generator | int,
    scheme: Scheme | str,
    t: int,
    *,
    faults: FaultSet | None = None,
    construction: str = "resolved",
    limit: int | None = None,
) -> Delivered | Dropped:
    """Drive a message to completion; faulty nodes or links drop it."""
    g = _gen(g)
    faults = faults or FaultSet()
    msg = init_routing(S, D, g, scheme, t, construction=construction)
    limit = limit if limit is not None else 2 * g.k + 3
    while True:
        prev = msg.hop_trace[-2]
        if faults.link_faulty(prev, msg.current):
            return Dropped(msg, f"link {prev} -- {msg.current} is faulty")
        if faults.node_faulty(msg.current):
            return Dropped(msg, f"node {msg.current} is faulty")
        out = route_step(msg)
        if isinstance(out, Delivered):
            return out
        if out.hops > limit:
            raise RoutingError(f"route exceeded {limit} hops")
        msg = out


def format_hop(i: int, u: EJInt, v: EJInt, g: Generator) -> str:
    d = next(m for m in range(6) if reduce(u + unit_pow(m), g) == v)
    return f"step {i}: {u} --{DIRECTION_NAMES[d]}--> {v}"


def relative_path(tree0: SpanningTree, S: EJInt, D: EJInt) -> list[EJInt]:
    """Path from ``S`` to ``D`` in ``tree0`` (rooted at 0) translated to root ``S``."""
    g = tree0.gen
    return [reduce(p + S, g) for p in tree0.path(reduce(D - S, g))]


class Unreachable:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __bool__(self) -> bool:
        return False


UNREACHABLE = Unreachable()


@dataclass(frozen=True)
class RouteChoice:
    tree: int
    path: tuple[EJInt, ...]

    @property
    def hops(self) -> int:
        return len(self.path) - 1


def fault_tolerant_route(
    S: EJInt,
    D: EJInt,
    g: Generator | int,
    scheme: Scheme | str,
    faults: FaultSet | None = None,
    *,
    construction: str = "resolved",
) -> RouteChoice | Unreachable:
    """Shortest surviving tree path from ``S`` to ``D``; ties go to the lower tree index."""
    g = _gen(g)
    scheme = Scheme.parse(scheme)
    faults = faults or FaultSet()
    S, D = reduce(S, g), reduce(D, g)
    faults.require_healthy(S, D)
    if S == D:
        raise RoutingError("source and destination coincide")
    best: RouteChoice | None = None
    for t in range(1, scheme.n_trees + 1):
        path = relative_path(build_tree(scheme, g, t, construction=construction), S, D)
        if faults.blocks_path(path):
            continue
        if best is None or len(path) < len(best.path):
            best = RouteChoice(t, tuple(path))
    return best if best is not None else UNREACHABLE


@dataclass(frozen=True)
class DeliveryPlan:
    source: EJInt
    dest: EJInt
    paths: dict[int, tuple[EJInt, ...]]
    certificate: dict[tuple[int, int], tuple[EJInt, ...]] = field(default_factory=dict)

    @property
    def disjoint(self) -> bool:
        return not any(self.certificate.values())


def split_delivery(
    S: EJInt, D: EJInt, g: Generator | int, scheme: Scheme | str, *, construction: str = "resolved"
) -> DeliveryPlan:
    """One path per tree; the certificate lists internal nodes shared by each pair."""
    g = _gen(g)
    scheme = Scheme.parse(scheme)
    S, D = reduce(S, g), reduce(D, g)
    if S == D:
        raise RoutingError("source and destination coincide")
    paths = {
        t: tuple(relative_path(build_tree(scheme, g, t, construction=construction), S, D))
        for t in range(1, scheme.n_trees + 1)
    }
    cert = {}
    for a, b in combinations(sorted(paths), 2):
        shared = set(paths[a][1:-1]) & set(paths[b][1:-1])
        cert[(a, b)] = tuple(sorted(shared))
    return DeliveryPlan(S, D, paths, cert)


def broadcast(tree: SpanningTree, faults: FaultSet | None = None) -> dict[EJInt, float]:
    """All-port arrival step per node; ``inf`` when a faulty node or link cuts it off."""
    faults = faults or FaultSet()
    if faults.node_faulty(tree.root):
        raise ValueError("the root is faulty")
    out: dict[EJInt, float] = {tree.root: 0}
    order = sorted(tree.parent, key=tree.depths.__getitem__)
    for v in order:
        p = tree.parent[v]
        if faults.node_faulty(v) or faults.link_faulty(v, p) or math.isinf(out[p]):
            out[v] = math.inf
        else:
            out[v] = out[p] + 1
    return out

