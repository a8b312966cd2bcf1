"""Acceptance criteria 1-9, one marker per criterion.

The terminal summary prints one PASS/FAIL line per criterion.  Literal
comparisons with published tables that are known to be inconsistent are
strict xfails; each has a passing companion check of the reconciled
statement, and the analysis is in the decisions ledger.
"""

import numpy as np
import pytest

from weylcoh import golden
from weylcoh import pointcount as pc
from weylcoh import reference as ref
from weylcoh import sieve
from weylcoh.arrangements import ArrangementPoset, oracle_count, poly_mul, substitute_count
from weylcoh.chartab import (
    ClassFunction, character_table, induce, inner_product, restrict, symmetric_table, weyl_character_table,
)
from weylcoh.moduli import (
    RECIPES, compute_cohomology, degree_context, equivariant_polynomials, ordinary_class_functions,
    poset_for, standard_root_system,
)
from weylcoh.weyl import WeylGroup, symmetric_group_embedding

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def fresh_polynomials():
    # recomputed from the counts, not read from the cache
    return {5: pc.count_polynomials(5), 6: pc.count_polynomials(6)}


# 1 -------------------------------------------------------------------------------------

@criterion(1)
@pytest.mark.parametrize("n", [5, 6])
def test_point_count_polynomials(fresh_polynomials, n):
    table = ref.S5_COUNTS if n == 5 else ref.S6_COUNTS
    polys = fresh_polynomials[n]
    assert len(polys) == len(table) == (7 if n == 5 else 11)
    for ct, coeffs in table.items():
        assert polys[ct].is_monic()
        assert list(polys[ct].coefficients) == coeffs, ct


# 2 -------------------------------------------------------------------------------------

@criterion(2)
def test_five_point_multiplicities(fresh_polynomials):
    t = pc.counts_to_cohomology(fresh_polynomials[5], 5, ref.S5_COLUMNS)
    assert t.rows == [[1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 1]]
    traces = {ct: pc.traces_from_polynomial(p) for ct, p in fresh_polynomials[5].items()}
    assert traces == ref.S5_TRACES


@criterion(2)
def test_six_point_multiplicities(fresh_polynomials):
    t = pc.counts_to_cohomology(fresh_polynomials[6], 6, ref.S6_COLUMNS)
    assert t.rows == ref.S6_MULTIPLICITIES


# 3 -------------------------------------------------------------------------------------

@criterion(3)
def test_unique_w_d5_lifts():
    t = sieve.d4_cohomology()
    assert [t.degree(i) for i in range(3)] == [{"phi_{1}^{0}": 1}, {"phi_{5}^{4}": 1}, {"phi_{6}^{6}": 1}]
    ctx = degree_context(4)
    for i, s5_row in enumerate(sieve.pointcount_table(5).rows):
        f = ClassFunction(ctx.s5.group, tuple(ctx.s5_table.compose(s5_row)))
        assert len(sieve._inflation_lifts(ctx, f)) == 1


# 4 -------------------------------------------------------------------------------------

@criterion(4)
def test_fibration_two_ways(fresh_polynomials):
    base = sieve.five_point_betti()
    fibre = sieve.fibre_betti()
    assert base == [1, 5, 6] and fibre == [1, 10, 25]
    assert list(poly_mul(base, fibre)) == ref.P6_BETTI
    assert pc.traces_from_polynomial(fresh_polynomials[6][(1,) * 6]) == ref.P6_BETTI


# 5 -------------------------------------------------------------------------------------

E6_AGREEING = [s for s in golden.E6_SPACES if f"e6:{s}" not in golden.CONFLICTS]
E6_CONFLICTING = [s for s in golden.E6_SPACES if f"e6:{s}" in golden.CONFLICTS]


def _e6_rows(ident):
    return compute_cohomology(ident).reordered(ref.E6_COLUMNS).rows


@criterion(5)
@pytest.mark.parametrize("ident", E6_AGREEING)
def test_e6_tables(ident):
    assert _e6_rows(ident) == ref.E6_TABLES[ident]


@criterion(5)
@pytest.mark.parametrize("ident", [
    pytest.param(s, marks=pytest.mark.xfail(strict=True, reason=golden.CONFLICTS[f"e6:{s}"]))
    for s in E6_CONFLICTING])
def test_e6_tables_literal(ident):
    assert _e6_rows(ident) == ref.E6_TABLES[ident]


@criterion(5)
def test_e6_inversion_quotient_of_trio_tori_up_to_column_exchange():
    ident = "D3_3n_hat"
    fixed = golden.swapped(ref.E6_TABLES[ident], ref.E6_COLUMNS, golden.E6_SWAPS[ident])
    assert _e6_rows(ident) == fixed


@criterion(5)
def test_e6_inversion_quotient_of_line_tori_first_columns():
    rows, pub = _e6_rows("D3_2n_hat"), ref.E6_TABLES["D3_2n_hat"]
    k = len(golden.D5_TORIC_AGREEING_COLUMNS)
    assert len(rows) == len(pub)
    assert [r[:k] for r in rows] == [r[:k] for r in pub]


@criterion(5)
def test_published_line_tables_violate_blowup_sequence():
    # the reason the literal comparison above cannot hold
    pub2n, pubtn = ref.E6_TABLES["D3_2n_hat"], ref.E6_TABLES["D3_tn"]
    diffs = [np.array(pub2n[i]) - np.array(pubtn[i - 1]) for i in range(1, len(pub2n)) if i - 1 < len(pubtn)]
    assert any(np.any(d < 0) for d in diffs)
    assert all(x >= 0 for r in compute_cohomology("D3_2n_union_tn").rows for x in r)


# 6 -------------------------------------------------------------------------------------

@criterion(6)
def test_d3n_betti_numbers():
    t = compute_cohomology("D3n")
    table = degree_context(3).table
    degs = [table.degrees()[table.index(c)] for c in t.columns]
    assert t.dimensions(degs) == [1, 36, 525, 3960, 16299, 34884, 30695]


# 7 -------------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def sieve_run():
    return sieve.run_sieve()


def _vecs(ds):
    return sorted(tuple(ref.as_vector(d)) for d in ds)


@criterion(7)
def test_sieve_candidates(sieve_run):
    s = sieve_run.after_bounds
    assert sorted(s.candidates[3]) == _vecs(ref.D3_H3_CANDIDATES)
    assert sorted(s.candidates[4]) == _vecs(ref.D3_H4_CANDIDATES)
    assert all(s.known[i] == tuple(ref.as_vector(ref.D3_COHOMOLOGY[i])) for i in range(3))


@criterion(7)
def test_sieve_positivity(sieve_run):
    s = sieve_run.after_positivity
    assert s.known[3] == tuple(ref.as_vector(ref.D3_COHOMOLOGY[3]))
    # every H^3 candidate containing phi_20^10 + phi_60^8 is gone
    i20, i60 = ref.E6_COLUMNS.index("phi_{20}^{10}"), ref.E6_COLUMNS.index("phi_{60}^{8}")
    assert not (s.known[3][i20] and s.known[3][i60])


@criterion(7)
def test_sieve_euler_filters(sieve_run):
    signed = sieve_run.final.stages["signed"]
    assert len(sieve_run.after_positivity.candidates[4]) == 8
    assert len(signed) == 4
    assert sorted(signed) == _vecs(ref.D3_H4_AFTER_SIGNED)
    # the sign-free filter keeps exactly one of the four
    assert sieve_run.final.known[4] in signed and 4 not in sieve_run.final.candidates


@criterion(7)
def test_sieve_final_answer():
    t = sieve.d3_cohomology()
    assert t.rows == [ref.as_vector(ref.D3_COHOMOLOGY[i]) for i in range(5)]


# 8 -------------------------------------------------------------------------------------

def _s5_rows(block):
    return compute_cohomology(block).reordered(ref.S5_COLUMNS).rows


@criterion(8)
@pytest.mark.parametrize("block", golden.D4_BLOCKS)
def test_quartic_blocks_relabelled(block):
    fixed = golden.swapped(ref.S5_TABLES[block], ref.S5_COLUMNS, golden.S5_SWAPS[block])
    assert _s5_rows(block) == fixed


@criterion(8)
@pytest.mark.parametrize("block", [
    pytest.param(b, marks=pytest.mark.xfail(strict=True, reason=golden.CONFLICTS[f"s5:{b}"]))
    for b in golden.D4_BLOCKS])
def test_quartic_blocks_literal(block):
    assert _s5_rows(block) == ref.S5_TABLES[block]


@criterion(8)
def test_quartic_first_principles():
    # H^1 of the projectivised D5 complement: 2-subsets of five points minus the trivial module
    d4c = compute_cohomology("D4c")
    assert d4c.degree(1) == {"s_{4,1}": 1, "s_{3,2}": 1}
    # H^0 of the A2 tori: permutation module on the 20 cosets of S3
    assert compute_cohomology("D4_4n").degree(0) == {"s_{5}": 1, "s_{4,1}": 2, "s_{3,2}": 1, "s_{3,1^2}": 1}


# 9 -------------------------------------------------------------------------------------

def _orthogonal(table):
    table.check_orthogonality()
    assert sum(d * d for d in table.degrees()) == table.group.order


@criterion(9)
def test_property_orthogonality_all_groups():
    ctx3, ctx4 = degree_context(3), degree_context(4)
    _orthogonal(ctx3.table)
    _orthogonal(ctx4.table)
    for t in ("F4", "A4", "A3", "A2"):
        _orthogonal(weyl_character_table(WeylGroup(standard_root_system(t)), primes=True))
    for n in (5, 6):
        g, types = pc.symmetric_group(n)
        _orthogonal(symmetric_table(g, types, n))
        _orthogonal(character_table(g))


@criterion(9)
def test_property_mobius_on_all_posets():
    posets = [poset_for(r) for r in RECIPES.values() if not r.is_union]
    for t in ("A1", "A2", "A3"):
        rs = standard_root_system(t)
        posets += [ArrangementPoset(rs.roots_in_basis[rs.positive], rs.rank, k) for k in ("toric", "linear")]
    for p in posets:
        sums = p.order_matrix.astype(np.int64) @ p.mobius()
        assert np.array_equal(sums, (p.codims() == 0).astype(np.int64))


@criterion(9)
def test_property_oracle_agreement():
    nonidentity = 0
    for t in ("A1", "A2", "A3"):
        rs = standard_root_system(t)
        w = WeylGroup(rs)
        pos = rs.roots_in_basis[rs.positive]
        for kind in ("toric", "linear"):
            p = ArrangementPoset(pos, rs.rank, kind)
            for cl in w.classes:
                g = w.matrices[cl.representative]
                nonidentity += cl.order > 1
                poly = p.equivariant_poincare(g)
                for q in (2, 3, 4, 5):
                    assert oracle_count(pos, rs.rank, kind, q, g) == substitute_count(poly, rs.rank, q)
    assert nonidentity >= 3


@criterion(9)
def test_property_exact_division_and_integral_averages():
    ctx4 = degree_context(4)
    for ident, r in RECIPES.items():
        if r.is_union:
            continue
        equivariant_polynomials(r)  # raises on inexact projectivization or averaging
        if r.degree == 4:
            for f in ordinary_class_functions(r):
                ctx4.quotient_class_function(f)


@criterion(9)
def test_property_frobenius_reciprocity():
    ctx3, ctx4 = degree_context(3), degree_context(4)
    trio = [ctx3.lattice.vector(c) for c in ("E1", "L-E1-E2", "2L-E1-E3-E4-E5-E6")]
    embeddings = [
        (symmetric_group_embedding(ctx3.weyl, 6)[0], ctx3.table),
        (ctx4.s5, ctx4.table),
        (ctx3.weyl.stabilizer([ctx3.lattice.vector("E6")]), ctx3.table),
        (ctx3.weyl.stabilizer(trio, setwise=True), ctx3.table),
    ]
    rng = np.random.default_rng(2024)
    for sub, big in embeddings:
        small = character_table(sub.group)
        for _ in range(20):
            f = small.compose(rng.integers(-2, 3, len(small)))
            g = big.compose(rng.integers(-2, 3, len(big)))
            lhs = inner_product(sub.parent, induce(sub, f), g)
            rhs = inner_product(sub.group, f, restrict(sub, g))
            assert lhs == rhs
