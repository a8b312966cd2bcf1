import numpy as np
import pytest

from weylcoh import cache as c
from weylcoh.arrangements import ArrangementPoset
from weylcoh.moduli import standard_root_system
from weylcoh.weyl import WeylGroup


@pytest.fixture(scope="module")
def a2():
    rs = standard_root_system("A2")
    return rs, WeylGroup(rs)


def test_group_round_trip(a2):
    _, w = a2
    text = c.group_to_text(w.group)
    g = c.group_from_text(text)
    assert g.order == 6
    assert np.array_equal(np.sort(g.elements, axis=0), np.sort(w.group.elements, axis=0))
    assert c.group_to_text(g) == text


def test_poset_round_trip(a2):
    rs, _ = a2
    p = ArrangementPoset(rs.roots_in_basis[rs.positive], rs.rank, "toric")
    text = c.poset_to_text(p)
    _, rows = c.loads(text, "poset")
    assert len(rows) == len(p.roots) + 5
    back = c.poset_from_text(text)
    assert [l.key for l in back.layers] == [l.key for l in p.layers]
    assert back.parents == p.parents
    assert np.array_equal(back.mobius(), p.mobius())
    assert c.poset_to_text(back) == text


def test_polys_round_trip():
    polys = [(0, 0, 6, 5, 1), (1,), (0, -1, 2)]
    assert c.polys_from_text(c.polys_to_text(polys, "x")) == polys


def test_corrupt_records_rejected():
    text = c.dumps("polys", {"label": "x", "classes": 1}, [(0, 1, 7)])
    with pytest.raises(c.CacheFormatError):
        c.loads(text.replace("7", "8"), "polys")
    with pytest.raises(c.CacheFormatError):
        c.loads(text, "poset")
    with pytest.raises(c.CacheFormatError):
        c.loads(text.replace("weylcoh polys 1", "weylcoh polys 0"), "polys")
    with pytest.raises(c.CacheFormatError):
        c.loads(text[:-1], "polys")
    with pytest.raises(c.CacheFormatError):
        c.dumps("polys", {"label": "a b"}, [])


def test_fetch_hits_and_recovers(tmp_path):
    store = c.Cache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return [(1, 2, 3)]

    to_text = lambda v: c.polys_to_text(v, "t")
    for _ in range(2):
        assert store.fetch("polys", "k", compute, to_text, c.polys_from_text) == [(1, 2, 3)]
    assert len(calls) == 1
    assert (store.hits, store.misses, store.writes) == (1, 1, 1)
    # a damaged file is recomputed and rewritten
    path = next(tmp_path.glob("polys-k.txt"))
    path.write_text("garbage\n")
    assert store.fetch("polys", "k", compute, to_text, c.polys_from_text) == [(1, 2, 3)]
    assert len(calls) == 2
    assert not list(tmp_path.glob(".*.tmp"))


def test_disabled_cache_stores_nothing():
    store = c.Cache(None)
    store.put("polys", "k", "x")
    assert store.get("polys", "k") is None
    assert store.stats() == "cache hits=0 misses=1 writes=0"


def test_content_key_is_stable():
    assert c.content_key("a", 1, np.array([1, 2])) == c.content_key("a", 1, [1, 2])
    assert c.content_key("a", 1) != c.content_key("a", 2)
