"""DOT and JSON renderings of networks and trees."""
from __future__ import annotations

import json

from .arith import EJInt
from .spantree.product import ProductTree
from .spantree.tree import SpanningTree
from .topology import DenseEJ, ProductEJ

__all__ = [
    "network_dot",
    "network_json",
    "product_dot",
    "product_json",
    "tree_dot",
    "tree_json",
    "product_tree_dot",
    "product_tree_json",
]


def _q(s: str) -> str:
    return '"' + s + '"'


def _pl(node: tuple[EJInt, ...]) -> str:
    return "|".join(str(c) for c in node)


def network_dot(net: DenseEJ) -> str:
    lines = [f"graph EJ_{net.gen.a}_{net.gen.b} {{"]
    lines += [f"  {_q(str(v))};" for v in net.nodes]
    for u, v, d in net.edges():
        style = " [style=dashed]" if net.is_wraparound(u, d) else ""
        lines.append(f"  {_q(str(u))} -- {_q(str(v))}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def network_json(net: DenseEJ) -> str:
    idx = net.index
    edges, wrap = [], []
    for u, v, d in net.edges():
        if net.is_wraparound(u, d):
            wrap.append(len(edges))
        edges.append([idx[u], idx[v], d])
    doc = {
        "generator": {"a": net.gen.a, "b": net.gen.b},
        "nodes": [[v.x, v.y] for v in net.nodes],
        "edges": edges,
        "wraparound": wrap,
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def product_dot(net: ProductEJ) -> str:
    lines = ["graph EJ_product {"]
    lines += [f"  {_q(_pl(n))};" for n in net.nodes()]
    for u, v, layer, d in net.edges():
        style = " [style=dashed]" if net.layers[layer].is_wraparound(u[layer], d) else ""
        lines.append(f"  {_q(_pl(u))} -- {_q(_pl(v))}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def product_json(net: ProductEJ) -> str:
    nodes = list(net.nodes())
    idx = {n: i for i, n in enumerate(nodes)}
    doc = {
        "generators": [{"a": L.gen.a, "b": L.gen.b} for L in net.layers],
        "nodes": [[[c.x, c.y] for c in n] for n in nodes],
        "edges": [[idx[u], idx[v], layer, d] for u, v, layer, d in net.edges()],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def tree_dot(tree: SpanningTree, *, parent_to_child: bool = True) -> str:
    name = f"{tree.scheme.value}_t{tree.t}"
    lines = [f"digraph {name} {{", f"  label={_q(tree.interpretation_id)};"]
    lines += [f"  {_q(str(v))};" for v in tree.nodes()]
    for v, p in tree.parent.items():
        a, b = (p, v) if parent_to_child else (v, p)
        lines.append(f"  {_q(str(a))} -> {_q(str(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_json(tree: SpanningTree) -> str:
    doc = {
        "scheme": tree.scheme.value,
        "t": tree.t,
        "root": [tree.root.x, tree.root.y],
        "interpretation_id": tree.interpretation_id,
        "parents": [[v.x, v.y, d] for v, d in tree.parent_dir.items()],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def product_tree_dot(tree: ProductTree, *, parent_to_child: bool = True) -> str:
    lines = [f"digraph {tree.scheme.value}_product_t{tree.t} {{"]
    for v, p in tree.directed_edges():
        a, b = (p, v) if parent_to_child else (v, p)
        lines.append(f"  {_q(_pl(a))} -> {_q(_pl(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def product_tree_json(tree: ProductTree) -> str:
    doc = {
        "scheme": tree.scheme.value,
        "t": tree.t,
        "root": [[c.x, c.y] for c in tree.root],
        "interpretation_ids": [L.interpretation_id for L in tree.layers],
        "parents": [
            [[[c.x, c.y] for c in v], [[c.x, c.y] for c in p]] for v, p in tree.directed_edges()
        ],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"
