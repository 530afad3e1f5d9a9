from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ejst.arith import (
    EJInt,
    Generator,
    ONE,
    RHO,
    ZERO,
    congruent,
    direction_of,
    norm,
    parse_address,
    reduce,
    unit_pow,
    weight,
)

E = EJInt
coords = st.integers(-60, 60)
ejints = st.builds(EJInt, coords, coords)
small_a = st.integers(1, 8)


def lattice_bfs(radius):
    """Hop distance from 0 over unit steps on the infinite lattice (oracle)."""
    dist = {ZERO: 0}
    q = deque([ZERO])
    while q:
        v = q.popleft()
        if dist[v] >= 3 * radius:
            continue
        for m in range(6):
            w = v + unit_pow(m)
            if max(abs(w.x), abs(w.y)) <= radius + 2 and w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def test_addition_examples():
    assert E(1, 1) + E(0, 1) == E(1, 2)
    assert E(3, 0) + -E(3, 0) == ZERO
    assert E(0, 3) + E(1, 0) == E(1, 3)


def test_multiplication_examples():
    assert RHO * RHO == E(-1, 1)
    assert RHO**3 == E(-1, 0)
    assert ONE * E(5, -7) == E(5, -7)


def test_unit_pow_examples():
    assert unit_pow(3) == E(-1, 0)
    assert unit_pow(5) == E(1, -1)
    assert unit_pow(6) == ONE
    assert unit_pow(-1) == unit_pow(5)


def test_norm_examples():
    assert norm(E(3, 4)) == 37
    assert norm(E(4, 5)) == 61
    assert norm(ZERO) == 0


def test_weight_examples():
    assert weight(E(1, -1)) == 1
    assert weight(E(2, 3)) == 5
    assert weight(E(-2, -1)) == 3


def test_reduce_examples():
    g = Generator(3)
    assert reduce(E(1, 3), g) == E(-2, -1)
    assert reduce(E(0, 4), g) == E(-3, 0)
    assert reduce(ZERO, g) == ZERO


def test_congruent_examples():
    g4 = Generator(4)
    # the routing walk ends at 3 - 3ρ², which is congruent to -2 + ρ², not -2 - ρ²
    assert congruent(parse_address("3,0,-3"), parse_address("-2,0,1"), g4)
    assert not congruent(parse_address("3,0,-3"), parse_address("-2,0,-1"), g4)
    assert congruent(E(7, -2), E(7, -2), g4)
    assert not congruent(ONE, ZERO, Generator(3))


def test_direction_negation():
    for m in range(6):
        assert -unit_pow(m) == unit_pow((m + 3) % 6)
        assert direction_of(unit_pow(m)) == m
    with pytest.raises(ValueError):
        direction_of(E(2, 0))


def test_generator_validation():
    assert Generator(3).norm == 37 == norm(Generator(3).alpha)
    assert Generator.from_ab(2, 3).k == 2
    with pytest.raises(ValueError):
        Generator(0)
    with pytest.raises(ValueError):
        Generator.from_ab(2, 4)


def test_parse_address():
    assert parse_address("-2,-1") == E(-2, -1)
    assert parse_address("-2,0,-1") == E(-1, -1)
    assert parse_address(" 3 , 0 , -3 ") == E(6, -3)
    for bad in ("", "1", "1,2,3,4", "a,b", "1,,2"):
        with pytest.raises(ValueError):
            parse_address(bad)


def test_rho_squared_normalisation():
    # ρ² = ρ - 1, so -2 - ρ² = -1 - ρ
    assert parse_address("-2,0,-1") == E(-1, -1)


@pytest.mark.parametrize("a", range(1, 7))
def test_residue_image_size(a):
    g = Generator(a)
    image = {reduce(E(x, y), g) for x in range(-100, 100) for y in range(-100, 100)}
    assert len(image) == g.norm
    assert all(weight(r) <= a for r in image)


def test_weight_matches_lattice_bfs():
    dist = lattice_bfs(12)
    for x in range(-12, 13):
        for y in range(-12, 13):
            assert weight(E(x, y)) == dist[E(x, y)]


def test_units_compose():
    for m in range(6):
        for n in range(6):
            assert unit_pow(m) * unit_pow(n) == unit_pow(m + n)


def test_large_a_no_overflow():
    g = Generator(1000)
    v = E(10**6, -(10**6) + 7)
    r = reduce(v, g)
    assert weight(r) <= 1000 and congruent(r, v, g)


@given(ejints, small_a)
def test_reduce_idempotent(v, a):
    g = Generator(a)
    assert reduce(reduce(v, g), g) == reduce(v, g)


@given(ejints, ejints, small_a)
def test_reduce_homomorphism(u, v, a):
    g = Generator(a)
    assert reduce(u + v, g) == reduce(reduce(u, g) + reduce(v, g), g)


@given(ejints, ejints, small_a)
def test_reduce_respects_products(u, v, a):
    g = Generator(a)
    assert reduce(u * v, g) == reduce(reduce(u, g) * reduce(v, g), g)


@given(ejints, small_a)
def test_reduce_is_congruent(v, a):
    g = Generator(a)
    r = reduce(v, g)
    assert weight(r) <= a
    # v - r is a multiple of alpha: (v - r) * conj(alpha) divisible by N
    q = (v - r) * g.alpha.conj()
    assert q.x % g.norm == 0 and q.y % g.norm == 0


@given(ejints, ejints)
def test_ring_axioms(u, v):
    assert u * v == v * u
    assert (u + v) - v == u
    assert norm(u * v) == norm(u) * norm(v)


@settings(max_examples=50)
@given(ejints)
def test_conjugate_gives_norm(v):
    assert v * v.conj() == E(norm(v), 0)
