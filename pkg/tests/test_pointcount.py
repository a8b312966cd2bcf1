import itertools
import math
import random

import pytest

from weylcoh import pointcount as pc
from weylcoh import reference as ref
from weylcoh.chartab import partitions
from weylcoh.finitegeom import (
    FiniteField, frobenius_point, general_position, normalize, pgl3_order, projective_points,
)

S5_TYPES = [tuple(p) for p in partitions(5)]
S6_TYPES = [tuple(p) for p in partitions(6)]


def naive_raw_count(sigma, q):
    """Ordered tuples with P[sigma(i)] = F(P[i]) in general position, by direct search."""
    n = len(sigma)
    cycles = pc.permutation_cycles(sigma)
    f = FiniteField.of_order(q ** math.lcm(*(len(c) for c in cycles)))
    choices = [projective_points(f, f.subfield(q ** len(c))) for c in cycles]
    raw = 0
    for pick in itertools.product(*choices):
        pts = [None] * n
        for cyc, p in zip(cycles, pick):
            x = p
            for i in cyc:
                pts[i] = x
                x = normalize(f, frobenius_point(f, x, q))
        raw += general_position(f, pts, check_conic=(n == 6))
    return raw


def conjugate(sigma, rng):
    tau = list(range(len(sigma)))
    rng.shuffle(tau)
    inv = [0] * len(tau)
    for i, t in enumerate(tau):
        inv[t] = i
    return [tau[sigma[inv[i]]] for i in range(len(sigma))]


def test_spec_examples():
    assert pc.count_fixed(pc.TwistedCountTask(5, (5,), 2)) == 5
    assert pc.count_fixed(pc.TwistedCountTask(5, (1, 1, 1, 1, 1), 2)) == 0
    assert pc.count_fixed(pc.TwistedCountTask(6, (2, 2, 1, 1), 2)) == 0


def test_task_validation():
    with pytest.raises(ValueError):
        pc.TwistedCountTask(5, (3, 3), 2)
    with pytest.raises(ValueError):
        pc.TwistedCountTask(7, (7,), 2)
    with pytest.raises(ValueError):
        pc.TwistedCountTask(5, (5,), 6)
    assert pc.TwistedCountTask(6, (1, 2, 3), 2).cycle_type == (3, 2, 1)
    assert pc.TwistedCountTask(6, (3, 2, 1), 2).period == 6


def test_strategies():
    assert pc.strategy_for((1, 1, 1, 1, 1, 1)) == "frame"
    assert pc.strategy_for((2, 2, 1, 1)) == "frame"
    assert pc.strategy_for((5, 1)) == "subspace"
    assert pc.strategy_for((6,)) == "subspace"


def test_budget_is_enforced():
    with pytest.raises(pc.BudgetExceeded):
        pc.count_fixed(pc.TwistedCountTask(6, (6,), 5), budget=10)


@pytest.mark.parametrize("ct", S5_TYPES + S6_TYPES, ids=lambda ct: "-".join(map(str, ct)))
def test_counts_match_direct_search_at_q2(ct):
    n = sum(ct)
    raw = naive_raw_count(pc.representative_permutation(ct), 2)
    assert raw % pgl3_order(2) == 0
    assert raw // pgl3_order(2) == pc.count_fixed(pc.TwistedCountTask(n, ct, 2))


@pytest.mark.parametrize("ct", S5_TYPES, ids=lambda ct: "-".join(map(str, ct)))
def test_bruteforce_conventions_and_conjugates(ct):
    rng = random.Random(sum(ct) * 31 + len(ct))
    sigma = pc.representative_permutation(ct)
    expected = pc.count_fixed(pc.TwistedCountTask(5, ct, 2))
    for s in (sigma, conjugate(sigma, rng), conjugate(sigma, rng)):
        for conv in ("forward", "backward"):
            raw, orbits = pc.count_fixed_bruteforce(s, 2, convention=conv)
            assert raw == orbits * pgl3_order(2)
            assert orbits == expected


def test_bruteforce_rejects_bad_input():
    with pytest.raises(ValueError):
        pc.count_fixed_bruteforce([0, 0, 1, 2, 3], 2)
    with pytest.raises(ValueError):
        pc.count_fixed_bruteforce([0, 1, 2, 3, 4], 2, convention="sideways")


@pytest.mark.parametrize("ct", [(1, 1, 1, 1, 1), (3, 1, 1), (5,)], ids=str)
def test_raw_counts_divisible_at_q3(ct):
    task = pc.TwistedCountTask(5, ct, 3)
    assert pc.raw_count(task) % pgl3_order(3) == 0
    assert pc.raw_count(task) // pgl3_order(3) == pc.count_fixed(task)


def test_interpolate_examples():
    assert str(pc.interpolate([(2, 5), (3, 10), (4, 17)], 2)) == "q^2 + 1"
    ident = pc.CountPolynomial(tuple(ref.S6_COUNTS[(1,) * 6]))
    p = pc.interpolate([(q, ident(q)) for q in (2, 3, 4, 5)], 4)
    assert p == ident
    assert str(p) == "q^4 - 15q^3 + 81q^2 - 185q + 150"
    assert pc.interpolate([(2, 7), (3, 7)], 0).coefficients == (7,)


def test_interpolate_failures():
    with pytest.raises(pc.PointCountError):
        pc.interpolate([(2, 5), (3, 10), (4, 18)], 2)
    with pytest.raises(pc.PointCountError):
        pc.interpolate([(2, 1), (3, 2)], 0)
    with pytest.raises(pc.PointCountError):
        pc.interpolate([(2, 5)], 2)
    with pytest.raises(pc.PointCountError):
        pc.interpolate([(2, 0), (4, 1)], 2)


def test_polynomial_helpers():
    p = pc.CountPolynomial((6, -5, 1))
    assert p.dim == 2 and p.is_monic() and p(2) == 0 and p(5) == 6
    assert str(pc.CountPolynomial((0,))) == "0"
    assert pc.traces_from_polynomial(p) == [1, 5, 6]


def test_five_point_cohomology():
    polys = {ct: pc.CountPolynomial(tuple(c)) for ct, c in ref.S5_COUNTS.items()}
    t = pc.counts_to_cohomology(polys, 5)
    assert t.degree(0) == {"s_{5}": 1}
    assert t.degree(1) == {"s_{3,2}": 1}
    assert t.degree(2) == {"s_{3,1^2}": 1}


def test_six_point_identity_betti():
    polys = {ct: pc.CountPolynomial(tuple(c)) for ct, c in ref.S6_COUNTS.items()}
    t = pc.counts_to_cohomology(polys, 6, ref.S6_COLUMNS)
    assert t.rows == ref.S6_MULTIPLICITIES
    assert [int(f.values[t.class_functions[0].group.class_of[0]]) for f in t.class_functions] == ref.P6_BETTI


def test_missing_type_rejected():
    polys = {ct: pc.CountPolynomial(tuple(c)) for ct, c in ref.S5_COUNTS.items()}
    polys.pop((5,))
    with pytest.raises(pc.PointCountError):
        pc.counts_to_cohomology(polys, 5)


def test_parallel_counts_are_deterministic():
    serial = pc.count_samples(5, (2, 3), workers=1)
    parallel = pc.count_samples(5, (2, 3), workers=2)
    assert serial == parallel
