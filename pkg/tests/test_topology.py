from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ejst.arith import EJInt, Generator, ZERO, reduce, unit_pow, weight
from ejst.topology import DenseEJ, FaultSet, build, product


@pytest.mark.parametrize("a", range(1, 7))
def test_node_count_and_degree(a):
    net = build(a)
    assert len(net) == 3 * a * a + 3 * a + 1
    for v in net.nodes:
        nbrs = [w for _, w in net.neighbors(v)]
        assert len(set(nbrs)) == 6 and v not in nbrs


@pytest.mark.parametrize("a", range(1, 6))
def test_distance_distribution(a):
    # a hexagonal ball: 6d nodes at each distance d <= k
    assert build(a).distance_distribution() == [1] + [6 * d for d in range(1, a + 1)]


@pytest.mark.parametrize("a", range(1, 5))
def test_edges_listed_once(a):
    net = build(a)
    edges = [frozenset((u, v)) for u, v, _ in net.edges()]
    assert len(edges) == len(set(edges)) == 3 * len(net)


def test_wraparound_edges():
    net = build(2)
    wrap = [(u, d) for u in net.nodes for d in range(6) if net.is_wraparound(u, d)]
    # boundary nodes of the hexagon have their outward links wrapped
    assert all(weight(u) == 2 for u, _ in wrap)
    assert not net.is_wraparound(ZERO, 0)


def test_bfs_matches_weight_of_reduced_difference():
    net = build(3)
    for u in net.nodes[:10]:
        dist = net.bfs(u)
        for v in net.nodes:
            assert dist[v] == weight(reduce(v - u, net.gen))


def test_neighbor_table_consistent():
    net = build(2)
    for i, row in enumerate(net.neighbor_table):
        for d, j in enumerate(row):
            assert net.neighbor_table[j][(d + 3) % 6] == i


def test_unknown_node_rejected():
    with pytest.raises(KeyError):
        build(2).neighbors(EJInt(5, 5))


def test_build_cache_and_generator():
    assert build(3) is build(Generator(3))
    assert isinstance(build(1), DenseEJ)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_vertex_transitive(a, data):
    net = build(a)
    s = data.draw(st.sampled_from(net.nodes))
    shifted = Counter(net.bfs(s).values())
    assert shifted == Counter(net.bfs(ZERO).values())
    # translation is a graph automorphism
    for u, v, _ in list(net.edges())[:40]:
        su, sv = net.translate(u, s), net.translate(v, s)
        assert sv in [w for _, w in net.neighbors(su)]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 5))
def test_rotation_automorphism(a, m):
    net = build(a)
    u = unit_pow(m)
    for v in net.nodes:
        image = {reduce(w * u, net.gen) for _, w in net.neighbors(v)}
        assert image == {w for _, w in net.neighbors(reduce(v * u, net.gen))}


def test_product_network():
    p = product([2, 1])
    assert len(p) == 19 * 7 and p.degree == 12 and p.dims == 2
    n = p.node_at(40)
    assert p.index(n) == 40
    nbrs = p.neighbors(n)
    assert len(nbrs) == 12 and all(p.adjacent(n, w) for _, _, w in nbrs)
    assert sum(1 for _ in p.edges()) == len(p) * 6
    assert not p.adjacent(n, n)


def test_fault_set():
    F = FaultSet.of([EJInt(1, 0)], [(ZERO, EJInt(0, 1))])
    assert F and len(F) == 2
    assert F.node_faulty(EJInt(1, 0))
    assert F.link_faulty(EJInt(0, 1), ZERO)
    assert F.blocks_path([ZERO, EJInt(0, 1)])
    assert not F.blocks_path([EJInt(1, 0), EJInt(1, 1)], endpoints=False)
    with pytest.raises(ValueError):
        F.require_healthy(EJInt(1, 0))
    assert not FaultSet()
