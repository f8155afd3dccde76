import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rational_floor, val5_by_division
from tspp5 import padic, ubasis
from tspp5.dseq import DSequence, d_sequence
from tspp5.ubasis import CoeffMatrix


@given(st.integers(-10 ** 30, 10 ** 30))
def test_val5_matches_division(n):
    want = val5_by_division(n)
    assert padic.val5(n) == (math.inf if want is None else want)


def test_val5_large_power():
    assert padic.val5(3 * 5 ** 200) == 200


@given(st.integers(1, 200), st.integers(1, 200))
def test_bounds_are_floors(i, j):
    assert padic.bound_a(i, j) == rational_floor(5 * j - i - 1, 6)
    assert padic.bound_b(i, j) == rational_floor(5 * j - i + 2, 6)
    assert padic.bound_d(i, j) == i + rational_floor(5 * j - 5, 6)


def test_bound_t_min():
    assert padic.bound_t(1, 3, [1, 2]) == min(padic.bound_a(1, k) + padic.bound_b(k, 3) for k in (1, 2))
    assert padic.bound_t(1, 3, []) is None


def test_bounds_hold_on_extended_matrices(appendix):
    A, B = appendix[0].extended(12), appendix[1].extended(12)
    assert padic.check_bound_a(A, 12, 60).passed
    assert padic.check_bound_b(B, 12, 61).passed


def test_bound_t_holds(appendix):
    A, B = appendix[0].extended(10), appendix[1].extended(50)
    T = ubasis.t_matrix(A, B, 10)
    assert padic.check_bound_t(T, A, 10, 10).passed


def test_bound_d_holds():
    assert padic.check_bound_d([d_sequence(1), d_sequence(3), d_sequence(5)]).passed
    with pytest.raises(ValueError):
        padic.check_bound_d([d_sequence(2)])


@pytest.mark.parametrize("name,i,j", [("A", 1, 5), ("A", 2, 10), ("B", 1, 1), ("B", 1, 6)])
def test_tight_witnesses(appendix, name, i, j):
    M, bound = (appendix[0], padic.bound_a) if name == "A" else (appendix[1], padic.bound_b)
    assert padic.val5(M[i, j]) == bound(i, j)


def test_d_tight():
    assert padic.val5(d_sequence(1)[1]) == padic.bound_d(1, 1)
    assert padic.val5(d_sequence(3)[2]) == padic.bound_d(2, 2)


def test_corrupted_t_gives_witness(appendix):
    A, B = appendix[0].extended(3), appendix[1].extended(15)
    T = ubasis.t_matrix(A, B, 3)
    rows = T.rows()
    rows[0][1] = 1
    report = padic.check_bound_t(CoeffMatrix("T", rows), A, 3, 3)
    assert not report.passed
    assert report.witnesses[0][0] == (1, 1)


def test_corrupted_d_gives_witness():
    report = padic.check_bound_d([DSequence(3, {1: 5, 2: 5, 3: 125})])
    assert [w[0] for w in report.witnesses] == [(3, 1), (3, 2)]
