import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylcoh.finitegeom import (
    ZERO, FiniteField, frobenius_point, general_position, make_field, normalize, pgl3_order,
    prime_power, projective_points,
)

TOWERS = [(2, 1, 1), (2, 2, 1), (2, 1, 3), (3, 1, 2), (3, 2, 1), (5, 1, 2), (7, 1, 1), (2, 3, 2)]


def test_four_element_field():
    t = make_field(2, 2, 1)
    f = t.field
    assert f.size == 4
    for x in f.elements():
        if x != ZERO:
            assert f.pow(x, 3) == f.one


@pytest.mark.parametrize("p,n,m", TOWERS)
def test_frobenius_has_exact_order(p, n, m):
    t = make_field(p, n, m)
    g = t.field.power_of_generator(1)
    x = g
    for k in range(1, m + 1):
        x = t.frobenius_q(x)
        assert (x == g) == (k == m)
    assert len(t.base_field()) == t.q


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_projective_plane_size(q):
    f = FiniteField.of_order(q)
    pts = projective_points(f)
    assert len(pts) == len(set(pts)) == q * q + q + 1
    assert all(normalize(f, p) == p for p in pts)


def test_prime_field_matches_integer_arithmetic():
    p = 7
    f = FiniteField.of_order(p)
    for a in range(p):
        for b in range(p):
            assert f.add(f.from_int(a), f.from_int(b)) == f.from_int((a + b) % p)
            assert f.mul(f.from_int(a), f.from_int(b)) == f.from_int(a * b % p)


def test_bad_fields_rejected():
    with pytest.raises(ValueError):
        make_field(4, 1, 1)
    with pytest.raises(ValueError):
        make_field(2, 0, 1)
    with pytest.raises(ValueError):
        FiniteField(2, 40)
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("p,n,m", TOWERS)
def test_field_axioms_on_samples(p, n, m):
    f = make_field(p, n, m).field
    rng = random.Random(p * 100 + n * 10 + m)
    elems = f.elements()
    assert len(elems) == f.size
    for _ in range(200):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.neg(a)) == f.zero
        assert f.sub(f.add(a, b), b) == a
        if a != f.zero:
            assert f.mul(a, f.inv(a)) == f.one


E = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def _pt(f, coords):
    return tuple(f.from_int(c) for c in coords)


def test_general_position_examples():
    f = FiniteField.of_order(7)
    assert general_position(f, [_pt(f, c) for c in E])
    assert not general_position(f, [_pt(f, c) for c in ((1, 0, 0), (0, 1, 0), (1, 1, 0))])
    assert not general_position(f, [_pt(f, c) for c in ((1, 0, 0), (1, 0, 0))])
    conic = [_pt(f, (1, t, t * t % 7)) for t in range(6)]
    assert general_position(f, conic, check_conic=False)
    assert not general_position(f, conic, check_conic=True)
    with pytest.raises(ValueError):
        general_position(f, [_pt(f, (1, t, t * t % 7)) for t in range(7)])


def _invertible_count(q):
    # brute force over F_q for prime q
    n = 0
    for entries in itertools.product(range(q), repeat=9):
        m = np.array(entries).reshape(3, 3)
        if round(np.linalg.det(m)) % q:
            n += 1
    return n


def test_pgl3_order():
    assert pgl3_order(2) == 168
    assert pgl3_order(3) == 5616
    assert pgl3_order(2) == _invertible_count(2) // 1
    assert pgl3_order(3) == _invertible_count(3) // 2
    with pytest.raises(ValueError):
        pgl3_order(1)


def _apply(f, mat, pt):
    out = []
    for row in mat:
        acc = f.zero
        for a, x in zip(row, pt):
            acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return tuple(out)


@given(st.sampled_from([3, 4, 5, 7]), st.integers(0, 10 ** 6), st.integers(3, 6))
@settings(max_examples=40, deadline=None)
def test_general_position_invariant_under_pgl(q, seed, k):
    f = FiniteField.of_order(q)
    rng = random.Random(seed)
    pts_all = projective_points(f)
    pts = rng.sample(pts_all, k)
    while True:
        mat = [[rng.choice(f.elements()) for _ in range(3)] for _ in range(3)]
        if f.det(mat) != f.zero:
            break
    moved = [normalize(f, _apply(f, mat, p)) for p in pts]
    assert general_position(f, pts) == general_position(f, moved)


@given(st.sampled_from([(2, 3), (3, 2), (2, 2), (5, 2)]), st.integers(0, 10 ** 6), st.integers(3, 6))
@settings(max_examples=40, deadline=None)
def test_general_position_commutes_with_frobenius(qm, seed, k):
    q, m = qm
    t = make_field(*prime_power(q), m)
    f = t.field
    rng = random.Random(seed)
    pts = [normalize(f, (f.one, rng.choice(f.elements()), rng.choice(f.elements()))) for _ in range(k)]
    image = [frobenius_point(f, p, q) for p in pts]
    assert general_position(f, pts) == general_position(f, image)
