import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from confluence.counting import (
    Series,
    count_P_closed,
    count_P_recurrence,
    count_T_closed,
    count_T_recurrence,
    p_table,
    series_f,
    series_g,
    t_table,
)
from confluence.matchings import enumerate_noncrossing, enumerate_symmetric

from oracles import brute_noncrossing, brute_symmetric, catalan

SYMMETRIC_COUNTS = [1, 1, 2, 3, 6, 10, 20, 35, 70]


def test_T_recurrence_examples():
    assert count_T_recurrence(0) == 1
    assert count_T_recurrence(3) == len(brute_noncrossing(3)) == 5
    assert count_T_recurrence(10) == 16796


def test_T_closed_examples():
    assert count_T_closed(1) == 1
    assert count_T_closed(4) == 14
    assert count_T_closed(12) == 208012


@pytest.mark.parametrize("J", [1, 2, 5, 8])
def test_P_recurrence_values(J):
    assert count_P_recurrence(J) == SYMMETRIC_COUNTS[J]


def test_P_closed_examples():
    assert count_P_closed(4) == 6
    assert count_P_closed(7) == 35
    assert count_P_closed(0) == 1


def test_symmetric_counts_to_eight():
    assert p_table(8) == SYMMETRIC_COUNTS
    assert [count_P_closed(j) for j in range(9)] == SYMMETRIC_COUNTS
    assert list(series_g(9)) == SYMMETRIC_COUNTS


@pytest.mark.parametrize("J", range(0, 7))
def test_counts_match_brute_force(J):
    T = len(brute_noncrossing(J)) if J else 1
    Pc = len(brute_symmetric(J)) if J else 1
    assert count_T_recurrence(J) == count_T_closed(J) == T
    assert count_P_recurrence(J) == count_P_closed(J) == Pc


def test_four_way_agreement():
    f, g = series_f(13), series_g(13)
    for J in range(1, 13):
        assert count_T_recurrence(J) == count_T_closed(J) == f[J] == len(enumerate_noncrossing(J))
        assert count_P_recurrence(J) == count_P_closed(J) == g[J] == len(enumerate_symmetric(J))


def test_recurrence_equals_closed_form_to_200():
    assert t_table(200) == [catalan(j) for j in range(201)]
    assert p_table(200) == [math.comb(j, j // 2) for j in range(201)]


def test_counts_are_exact_integers():
    assert isinstance(count_T_closed(150), int)
    assert count_T_closed(150) == math.comb(300, 150) // 151


@pytest.mark.parametrize("J", range(0, 60))
def test_symmetric_never_exceeds_total(J):
    assert count_P_closed(J) <= count_T_closed(J)


def test_negative_J_rejected():
    for fn in (count_T_recurrence, count_T_closed, count_P_recurrence, count_P_closed):
        with pytest.raises(ValueError):
            fn(-1)


def test_series_f_examples():
    assert list(series_f(4)) == [1, 1, 2, 5]
    assert list(series_f(1)) == [1]
    assert series_f(8)[7] == 429


def test_series_g_examples():
    assert list(series_g(9)) == SYMMETRIC_COUNTS
    assert list(series_g(1)) == [1]
    assert series_g(13)[12] == 924


@pytest.mark.parametrize("order", [1, 2, 3, 7, 16, 33, 101])
def test_series_orders_and_values(order):
    f, g = series_f(order), series_g(order)
    assert f.order == g.order == order
    assert list(f) == [catalan(j) for j in range(order)]
    assert list(g) == [math.comb(j, j // 2) for j in range(order)]


def test_series_satisfy_functional_equations():
    n = 40
    f, g = series_f(n), series_g(n)
    # f**2 = (f - 1) / x
    assert list(f * f)[: n - 1] == list(f)[1:]
    # g - 1 = x g + x**2 f(x**2) g
    x = Series.of([0, 1], n)
    lhs = g - 1
    rhs = x * g + series_f(n).compose_square().truncate(n).shift(2) * g
    assert lhs == rhs


def test_series_reject_bad_order():
    with pytest.raises(ValueError):
        series_f(0)
    with pytest.raises(ValueError):
        series_g(0)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=12), st.sampled_from([1, -1]))
def test_series_inverse(coeffs, unit):
    s = Series.of([unit] + coeffs)
    prod = s * s.inverse()
    assert list(prod) == [1] + [0] * (s.order - 1)


def test_series_inverse_needs_unit():
    with pytest.raises(ValueError):
        Series.of([2, 1]).inverse()


def test_compose_square_interleaves():
    assert list(Series.of([1, 2, 3]).compose_square()) == [1, 0, 2, 0, 3, 0]
