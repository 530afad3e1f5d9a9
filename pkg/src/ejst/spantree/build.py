"""Tree construction entry points, path words and the verifier report."""
from __future__ import annotations

from functools import lru_cache

from ..arith import EJInt, Generator, ZERO, reduce, unit_pow
from .interpret import Interpretation, construct, interpretation_for, row_word
from .sectors import Scheme, SectorClass, classify
from .tables import PATH_ROWS
from .tree import PathWord, SpanningTree, expand_word, word_of_path
from .verify import (
    Report,
    render_reports,
    unused_edges,
    verify_edge_disjoint,
    verify_node_independent,
    verify_path_consistency,
    verify_spanning,
)

__all__ = [
    "PathWordError",
    "build_tree",
    "build_all",
    "path_word",
    "verify_all",
    "verification_text",
]


class PathWordError(ValueError):
    """A table word does not end at its target under the active interpretation."""


def _gen(g: Generator | int) -> Generator:
    return Generator(g) if isinstance(g, int) else g


@lru_cache(maxsize=256)
def _trees_at_zero(scheme: Scheme, g: Generator, construction: str) -> tuple[SpanningTree, ...]:
    interp = interpretation_for(scheme, g, construction)
    reading = interp.reading
    if reading is None:
        from .interpret import literal_reading

        reading = literal_reading(scheme)
    return tuple(
        SpanningTree(scheme, g, scheme.offset(t), ZERO, construct(reading, g, scheme.offset(t)), interp.id)
        for t in range(1, scheme.n_trees + 1)
    )


def build_tree(
    scheme: Scheme | str,
    g: Generator | int,
    t: int,
    *,
    root: EJInt = ZERO,
    construction: str = "resolved",
) -> SpanningTree:
    """Tree ``t`` of the scheme, rooted at ``root``.

    ``construction="resolved"`` uses the first verified table reading;
    ``"literal"`` applies the tables literally with exponents over the tree index.
    """
    scheme = Scheme.parse(scheme)
    g = _gen(g)
    scheme.offset(t)  # validates t
    tree = _trees_at_zero(scheme, g, construction)[t - 1]
    return tree if root == ZERO else tree.translate(reduce(root, g))


def build_all(
    scheme: Scheme | str, g: Generator | int, *, root: EJInt = ZERO, construction: str = "resolved"
) -> list[SpanningTree]:
    scheme = Scheme.parse(scheme)
    return [build_tree(scheme, g, t, root=root, construction=construction) for t in range(1, scheme.n_trees + 1)]


def path_word(
    scheme: Scheme | str,
    g: Generator | int,
    t: int,
    v: EJInt,
    *,
    construction: str = "resolved",
    tree: SpanningTree | None = None,
) -> PathWord:
    """Word from the root (taken as 0) to ``v`` along tree ``t``.

    The word comes from the path-table row chosen for ``v``'s class; classes
    with no matching row fall back to the tree itself.  Zero-length runs are
    dropped.  Raises ``PathWordError`` if the word misses ``v``.
    """
    scheme = Scheme.parse(scheme)
    g = _gen(g)
    v = reduce(v, g)
    if not v:
        raise ValueError("the root has no path word")
    interp = interpretation_for(scheme, g, construction)
    c = scheme.offset(t)
    cls: SectorClass = classify(scheme, g, t, v)
    src = interp.path_sources.get(cls.label)
    if src is None or src.row is None:
        ref = tree if tree is not None else build_tree(scheme, g, t, construction=construction)
        return word_of_path([p - ref.root for p in ref.path(reduce(v + ref.root, g))], g)
    v1 = v * unit_pow(-c)
    word = row_word(PATH_ROWS[scheme][src.row], src.frame, v1, g.k, c)
    if word is None or expand_word(word, g)[-1] != v:
        raise PathWordError(
            f"{interp.id}: word for {v} ({cls.label}) does not end at {v}"
        )
    return word


def verify_all(
    scheme: Scheme | str, g: Generator | int, *, construction: str = "resolved", trees=None
) -> tuple[list[Report], Interpretation]:
    scheme = Scheme.parse(scheme)
    g = _gen(g)
    interp = interpretation_for(scheme, g, construction)
    trees = trees if trees is not None else build_all(scheme, g, construction=construction)
    reports = [verify_spanning(t) for t in trees]
    if all(r.passed for r in reports):
        reports.append(verify_edge_disjoint(trees))
        if scheme is Scheme.IST:
            # undirected overlap is expected for six trees; report it for information
            undirected = verify_edge_disjoint(trees, directed=False)
            reports[-1].notes.append(
                f"undirected reuse: {undirected.n_violations} shared edges (allowed for IST)"
            )
        reports.append(verify_node_independent(trees))
        for t in trees:
            reports.append(
                verify_path_consistency(
                    t, lambda v, t=t: path_word(scheme, g, t.t, v - t.root, construction=construction, tree=t)
                )
            )
        dep = Report("depth")
        depths = [t.depth for t in trees]
        dep.checked = len(trees)
        dep.notes.append("depths " + ", ".join(map(str, depths)))
        reports.append(dep)
        if scheme is Scheme.EDNIST:
            spare = unused_edges(trees)
            audit = Report("unused network edges")
            audit.checked = len(spare)
            audit.notes.append(
                f"count {len(spare)}: " + ", ".join(f"{u} -- {w}" for u, w in spare)
            )
            reports.append(audit)
    return reports, interp


def verification_text(scheme: Scheme | str, g: Generator | int, *, construction: str = "resolved") -> tuple[str, bool]:
    scheme = Scheme.parse(scheme)
    g = _gen(g)
    reports, interp = verify_all(scheme, g, construction=construction)
    head = [f"scheme {scheme.value}, α = {g}, N = {g.norm}, k = {g.k}, construction {construction}"]
    text = "\n".join(head + interp.summary() + [render_reports(reports)])
    return text, all(r.passed for r in reports)
