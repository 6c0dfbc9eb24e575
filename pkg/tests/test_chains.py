import math

import pytest
from hypothesis import given, strategies as st

from oracles import aset_scan, g_rec
from unitychain.chains import (
    ChainCoord,
    aset_chain,
    chain_iter,
    descend,
    locate,
    locate_scan,
    predecessor,
)
from unitychain.polyseq import g_eval
from unitychain.unity import aset_brute, aset_fast


def values(k, limit):
    return [v for _, v in chain_iter(k, limit)]


def test_chain_iter_examples():
    assert values(3, 400) == [8, 21, 55, 144, 377]
    # G_4(5) = 5*115 - 24 = 551
    assert values(5, 600) == [24, 115, 551]
    assert chain_iter(3, 400)[0] == (ChainCoord(3, 2), 8)


@given(st.integers(3, 10**4))
def test_chain_iter_empty_below_first_member(k):
    assert chain_iter(k, k * k - 2) == []
    assert values(k, k * k - 1) == [k * k - 1]


@given(st.integers(3, 200), st.integers(8, 10**15))
def test_chain_iter_matches_recursion_and_bounds(k, limit):
    rows = chain_iter(k, limit)
    vals = [v for _, v in rows]
    assert vals == sorted(set(vals))
    for (kk, i), v in rows:
        assert kk == k and v == g_rec(i, k) <= limit
        assert v > (k - 1) ** i
    assert [c.i for c, _ in rows] == list(range(2, 2 + len(rows)))


def test_chain_iter_errors():
    with pytest.raises(ValueError):
        chain_iter(2, 100)
    with pytest.raises(OverflowError):
        chain_iter(3, 2**63)


@pytest.mark.parametrize("coord, expected, n", [((3, 2), 3, 8), ((5, 2), 5, 24), ((3, 3), 8, 21)])
def test_predecessor_examples(coord, expected, n):
    assert predecessor(ChainCoord(*coord)) == expected
    assert expected in aset_scan(n)


def test_predecessor_rejects_bad_coords():
    with pytest.raises(ValueError):
        predecessor(ChainCoord(2, 5))
    with pytest.raises(ValueError):
        predecessor(ChainCoord(3, 1))


def test_descend_examples():
    t = descend(8, 21)
    assert t.z == 3
    assert t.steps == ((8, 21), (3, 8), (1, 3))
    assert t.coord == (3, 3)
    assert g_eval(3, 3) == 21
    assert str(t) == "z=3, path (8,21) -> (3,8) -> (1,3), n = G_3(3)"

    t = descend(5, 24)
    assert (t.z, t.steps, t.coord) == (5, ((5, 24), (1, 5)), (5, 2))


def test_descend_trace_invariants():
    t = descend(predecessor(ChainCoord(7, 9)), g_eval(9, 7))
    seconds = [hi for _, hi in t.steps]
    assert seconds == sorted(seconds, reverse=True)
    for lo, hi in t.steps:
        assert (hi * hi + lo * lo - 1) == t.z * lo * hi
    assert t.steps[-1] == (1, t.z)


@pytest.mark.parametrize("a, n", [(1, 8), (7, 8), (2, 8), (4, 21), (5, 21), (0, 5)])
def test_descend_rejects_non_members(a, n):
    with pytest.raises(ValueError):
        descend(a, n)


def test_descend_roundtrip_huge():
    k, i = 10**9, 40
    t = descend(g_eval(i - 1, k), g_eval(i, k))
    assert t.coord == (k, i)


@pytest.mark.parametrize("n, expected", [(8, [(3, 2)]), (7, []), (144, [(3, 5)]), (2, []), (3, [])])
def test_locate_examples(n, expected):
    assert locate(n) == expected
    assert locate_scan(n) == expected


def test_locate_matches_scan_and_corollary():
    for n in range(4, 10**4 + 1):
        via_descent = locate(n)
        assert via_descent == locate_scan(n)
        assert len(via_descent) == len(aset_fast(n)) - 2
        assert len(via_descent) < math.log2(n)


def test_aset_chain_agrees():
    for n in range(2, 3000):
        assert aset_chain(n).elements == aset_brute(n).elements
    assert aset_chain(144).method == "chain"
