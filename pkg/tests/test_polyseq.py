from math import gcd

import pytest
from hypothesis import given, strategies as st

from oracles import f_rec, g_rec
from unitychain.polyseq import PolyCoeffs, f_coeffs, f_eval, g_coeffs, g_eval, pair_quotient


@pytest.mark.parametrize(
    "i, k, expected",
    [(0, 7, 1), (2, 9, 80), (5, 3, 144), (3, 4, 56), (1, 11, 11)],
)
def test_g_eval_values(i, k, expected):
    assert g_eval(i, k) == expected == g_rec(i, k)


@given(st.integers(0, 200))
def test_g_at_two_is_successor(i):
    assert g_eval(i, 2) == i + 1


@given(st.integers(0, 60), st.integers(2, 500))
def test_g_eval_matches_recursion(i, k):
    assert g_eval(i, k) == g_rec(i, k)
    assert g_eval(i, k) > 0


def test_g_eval_large_is_exact():
    v = g_eval(300, 10**6)
    assert v == g_rec(300, 10**6)
    assert v.bit_length() > 5000


@pytest.mark.parametrize("i, k, expected", [(2, 4, 17), (4, 2, 29), (6, 6, 53353)])
def test_f_eval_prime_values(i, k, expected):
    assert f_eval(i, k) == expected == f_rec(i, k)


def test_g_coeffs_small():
    assert g_coeffs(0).coeffs == (1,)
    assert g_coeffs(2).coeffs == (-1, 0, 1)
    assert g_coeffs(3).coeffs == (0, -2, 0, 1)
    assert g_coeffs(4).coeffs == (1, 0, -3, 0, 1)
    assert str(g_coeffs(4)) == "x^4 - 3x^2 + 1"


def test_f_coeffs_small():
    assert f_coeffs(1).coeffs == (0, 1)
    assert f_coeffs(2).coeffs == (1, 0, 1)
    assert f_coeffs(4).coeffs == (1, 0, 3, 0, 1)


@pytest.mark.parametrize("i", range(13))
def test_degree_and_leading(i):
    for p in (g_coeffs(i), f_coeffs(i)):
        assert p.degree == i
        assert p.leading == 1


@pytest.mark.parametrize("i", range(13))
@pytest.mark.parametrize("k", range(2, 11))
def test_coeffs_agree_with_eval(i, k):
    assert g_coeffs(i)(k) == g_eval(i, k)
    assert f_coeffs(i)(k) == f_eval(i, k)


@pytest.mark.parametrize("r", range(1, 13))
def test_even_index_is_difference_of_squares(r):
    a, b = g_coeffs(r), g_coeffs(r - 1)
    assert g_coeffs(2 * r) == a * a - b * b


@pytest.mark.parametrize("r", range(1, 13))
def test_f_even_index_is_sum_of_squares(r):
    a, b = f_coeffs(r), f_coeffs(r - 1)
    assert f_coeffs(2 * r) == a * a + b * b


@pytest.mark.parametrize("r", range(13))
def test_odd_index_has_no_constant_term(r):
    assert g_coeffs(2 * r + 1).coeffs[0] == 0


@pytest.mark.parametrize("k", range(3, 11))
def test_consecutive_pair_quotient_and_coprime(k):
    for i in range(1, 31):
        n, a = g_eval(i, k), g_eval(i - 1, k)
        assert pair_quotient(i, k) == k
        assert (n * n + a * a - 1) % (n * a) == 0
        assert gcd(n, a) == 1


def test_monotonicity_and_lower_bound():
    for i in range(2, 31):
        for k in range(2, 31):
            g = g_eval(i, k)
            assert g_eval(i + 1, k) > g
            assert g_eval(i, k + 1) > g
            assert g > (k - 1) ** i


def test_domain_errors():
    with pytest.raises(ValueError):
        g_eval(-1, 3)
    with pytest.raises(ValueError):
        g_eval(2, 1)
    with pytest.raises(ValueError):
        PolyCoeffs((0, 0))
    with pytest.raises(ValueError):
        pair_quotient(0, 3)
