import numpy as np
import pytest

from weylcoh.groups import PermGroup, perm_order


def s4():
    return PermGroup([[1, 0, 2, 3], [1, 2, 3, 0]])


def test_symmetric_group_on_four_points():
    g = s4()
    assert g.order == 24
    sizes = sorted(c.size for c in g.classes)
    assert sizes == [1, 3, 6, 6, 8]
    assert sum(sizes) == g.order


def test_class_bookkeeping():
    g = s4()
    for c in g.classes:
        members = g.class_members(c.index)
        assert len(members) == c.size
        assert all(g.class_of[m] == c.index for m in members)
        assert g.centralizer_order(c.index) * c.size == g.order
        assert perm_order(g.elements[c.representative]) == c.order


def test_multiplication_and_inverse():
    g = s4()
    rng = np.random.default_rng(1)
    for _ in range(20):
        i, j = (int(x) for x in rng.integers(0, g.order, 2))
        k = g.mul(i, j)
        assert g.mul(k, int(g.inverse[k])) == g.index(np.arange(4)[None])[0]
        assert g.power(i, perm_order(g.elements[i])) == g.index(np.arange(4)[None])[0]


def test_power_map_preserves_order_divisibility():
    g = s4()
    pm = g.power_map(2)
    for c in g.classes:
        image = g.classes[pm[c.index]]
        assert image.order == c.order // np.gcd(c.order, 2)


def test_exponent():
    assert s4().exponent() == 12


def test_subgroup_fusion():
    g = s4()
    # Klein four-group
    v4 = [int(g.index(np.array([p]))[0]) for p in ([0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0])]
    sub = g.subgroup(v4)
    assert sub.order == 4
    fus = sub.fusion()
    # the three involutions fuse to one class of size 3
    assert len(set(fus.tolist())) == 2


def test_non_subgroup_rejected():
    g = s4()
    idx = [int(g.index(np.array([p]))[0]) for p in ([0, 1, 2, 3], [1, 0, 2, 3], [0, 2, 1, 3])]
    with pytest.raises(ValueError):
        g.subgroup(idx)
