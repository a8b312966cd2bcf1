import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylcoh import reference as ref
from weylcoh import sieve
from weylcoh.moduli import compute_cohomology


@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_bounded_solutions_matches_exhaustive_search(nrow, ncol, seed):
    rng = np.random.default_rng(seed)
    r = rng.integers(0, 3, (nrow, ncol))
    upper = rng.integers(0, 3, ncol)
    x0 = np.array([rng.integers(0, u + 1) for u in upper])
    target = r @ x0
    got = sieve.bounded_solutions(r, target, upper)
    want = sorted(tuple(int(v) for v in x) for x in itertools.product(*[range(u + 1) for u in upper])
                  if np.array_equal(r @ np.array(x, dtype=np.int64), target))
    assert got == want
    assert tuple(int(v) for v in x0) in got


@pytest.fixture(scope="module")
def run():
    return sieve.run_sieve()


@pytest.fixture(scope="module")
def data():
    return sieve.sieve_data()


def test_low_degrees_determined(run):
    s = run.after_bounds
    assert s.known[1] == tuple(ref.as_vector({"phi_{15}^{4}": 1}))
    assert set(s.candidates) == {3, 4}
    assert len(s.candidates[3]) == 2 and len(s.candidates[4]) == 8


def test_positivity_keeps_the_true_answer(run, data):
    final = [run.final.known[i] for i in range(5)]
    for q in sieve.POSITIVITY_QS:
        assert np.all(sieve.twisted_count(data, final, q) >= 0)


def test_identity_count_matches_polynomial(run, data):
    # at the identity class the point count of the answer is the six-point polynomial
    final = [run.final.known[i] for i in range(5)]
    poly = sieve.pointcount_polynomials(6)[(1,) * 6]
    ident = 0  # the identity is the first W(E6) class
    for q in (2, 3, 4, 5, 7):
        assert sieve.twisted_count(data, final, q)[ident] == poly(q)


def test_final_answer_respects_every_bound(run, data):
    for i in range(5):
        assert np.all(np.array(run.final.known[i]) <= data.upper_bound(i))


def test_final_answer_restricts_to_s6_table(run, data):
    for i in range(5):
        assert (data.restriction @ np.array(run.final.known[i])).tolist() == ref.S6_MULTIPLICITIES[i]


def test_invariants_of_d3_vanish_in_positive_degrees():
    t = sieve.d3_cohomology()
    assert [r[0] for r in t.rows] == [1, 0, 0, 0, 0]


def test_euler_classes(run):
    e = run.euler
    assert sorted(e.orders_signed) == [2, 2, 4, 4, 6, 12]
    assert len(e.signed_new) == 2
    assert len(e.twisted) == 8


def test_fibration():
    assert sieve.five_point_betti() == ref.P5_BETTI
    assert sieve.fibre_betti() == ref.FIBRE_BETTI
    f = sieve.fibration_check()
    assert f["product"] == f["points"] == ref.P6_BETTI


def test_format_rep():
    v = ref.as_vector({"phi_{15}^{5}": 1, "phi_{80}^{7}": 2})
    assert sieve.format_rep(v) == "phi_{15}^{5} + 2*phi_{80}^{7}"
    assert sieve.as_dict(v) == {"phi_{15}^{5}": 1, "phi_{80}^{7}": 2}
