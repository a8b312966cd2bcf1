import numpy as np
import pytest

from weylcoh import moduli
from weylcoh import reference as ref
from weylcoh.moduli import ALL_IDS, RECIPES, build_recipe, compute_cohomology, degree_context

UNIONS = [i for i, r in RECIPES.items() if r.is_union]


def test_recipe_examples():
    r = build_recipe("D3n")
    assert (r.root_type, r.kind, r.twist, r.stabilizer) == ("E6", "toric", True, None)
    r = build_recipe("D3_tn")
    assert (r.root_type, r.kind, r.stabilizer) == ("D5", "projective", "pointwise")
    r = build_recipe("D4_4n")
    assert (r.root_type, r.kind, r.degree) == ("A2", "toric", 4)
    with pytest.raises(KeyError):
        build_recipe("D7")
    assert set(RECIPES) < set(ALL_IDS)


def test_component_counts(ctx3):
    # lines and tritangent trios are the orbits the disjoint unions run over
    d5 = ctx3.stabilizer(("E6",), False)
    trio = ctx3.stabilizer(moduli._TRIO, True)
    assert ctx3.weyl.order // d5.order == 27
    assert ctx3.weyl.order // trio.order == 45


def test_named_entries():
    d3n = compute_cohomology("D3n")
    assert d3n.degree(6)["phi_{90}^{8}"] == 49
    assert compute_cohomology("D3c").degree(0) == {"phi_{1}^{0}": 1}
    d4c = compute_cohomology("D4c").reordered(ref.S5_COLUMNS)
    assert d4c.rows[0] == [1, 0, 0, 0, 0, 0, 0]
    assert compute_cohomology("D4").degree(1) == {"phi_{5}^{4}": 1}


def test_first_degree_of_blown_up_torus():
    t = compute_cohomology("D3n_union_c")
    assert t.degree(0) == {"phi_{1}^{0}": 1}
    assert t.degree(1) == {"phi_{15}^{4}": 1, "phi_{20}^{2}": 1}


@pytest.mark.parametrize("ident", UNIONS)
def test_union_is_toric_minus_shifted_projective(ident):
    tor_id, proj_id = RECIPES[ident].union
    u = compute_cohomology(ident).rows
    tor = compute_cohomology(tor_id).rows
    proj = compute_cohomology(proj_id).rows
    for i in range(max(len(u), len(tor))):
        a = np.array(tor[i]) if i < len(tor) else 0
        b = np.array(proj[i - 1]) if 0 < i <= len(proj) else 0
        got = np.array(u[i]) if i < len(u) else np.zeros(len(ref.E6_COLUMNS), dtype=int)
        assert np.array_equal(got, a - b)
        assert np.all(got >= 0)


@pytest.mark.parametrize("ident", ALL_IDS)
def test_invariants_nonnegative(ident):
    t = compute_cohomology(ident)
    triv = "phi_{1}^{0}" if t.group != "S5" else "s_{5}"
    assert all(t.degree(i).get(triv, 0) >= 0 for i in range(len(t.rows)))
    assert all(x >= 0 for row in t.rows for x in row)


def test_euler_characteristic_of_d3n_quotient(ctx3):
    t = compute_cohomology("D3n")
    degs = [ctx3.table.degrees()[ctx3.table.index(c)] for c in t.columns]
    assert t.dimensions(degs) == ref.D3N_BETTI


def test_d5_quotient_is_integral(ctx4):
    # (Z/2)^4-averages of genuine W(D5) characters are characters of S5
    for label in ctx4.table.labels:
        f = ctx4.quotient_class_function(ctx4.table.character(label))
        mults = ctx4.s5_table.decompose(f)
        assert all(m >= 0 for m in mults)
