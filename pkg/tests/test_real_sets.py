from fractions import Fraction

import pytest
from helpers import interval_unions, rationals
from hypothesis import given

from lyusternik.real_sets import (
    EmptySetError,
    IntervalUnion1D,
    grid_error_bound,
    grid_oracle,
    measure,
    minkowski_sum,
    normalize,
    overlap_measure,
    translate_scale,
    truncate,
)

U = IntervalUnion1D.of
HALVES = U((0, Fraction(1, 2)), (1, Fraction(3, 2)))


def test_normalize():
    assert normalize([[0, 1], [1, 2]]) == U((0, 2))
    assert normalize([[2, 3], [0, 1]]).intervals == U((0, 1), (2, 3)).intervals
    assert normalize([[0, 2], [1, 3], [5, 5]]) == U((0, 3), (5, 5))
    with pytest.raises(ValueError):
        normalize([[2, 1]])


def test_sum_examples():
    assert minkowski_sum(U((0, 1)), U((2, 3))) == U((2, 4))
    assert minkowski_sum(HALVES, HALVES) == U((0, 3))
    assert minkowski_sum(U((0, 0), (1, 2)), U((0, 1))) == U((0, 3))
    with pytest.raises(EmptySetError):
        minkowski_sum(IntervalUnion1D(()), U((0, 1)))


def test_measure():
    assert measure(U((2, 4))) == 2
    assert measure(HALVES) == 1
    assert measure(U((0, 0))) == 0


def test_translate_scale():
    assert translate_scale(U((0, 1)), -1, 1) == U((-1, 0))
    assert translate_scale(U((0, 1)), 0, 3) == U((0, 3))
    assert translate_scale(U((0, 1), (2, 3)), 1, Fraction(1, 2)) == U((1, Fraction(3, 2)), (2, Fraction(5, 2)))
    with pytest.raises(ValueError):
        translate_scale(U((0, 1)), 0, 0)


def test_truncate():
    t = truncate(U((0, 3)), 1, 2)
    assert t == U((1, 2)) and measure(t) == 1
    assert truncate(U((0, 1)), 2, 3).is_empty()
    assert truncate(U((0, 0), (1, 2)), 0, Fraction(3, 2)) == U((1, Fraction(3, 2)))


def test_grid_examples():
    assert abs(grid_oracle(U((0, 1)), U((0, 1)), 2 ** 12) - 2) <= 2 ** -10
    est = grid_oracle(HALVES, HALVES, 2 ** 12)
    assert abs(est - 3) <= grid_error_bound(HALVES, HALVES, 2 ** 12)
    assert grid_oracle(U((0, 0)), U((0, 0)), 2 ** 12) == 0


@given(interval_unions(), interval_unions())
def test_sum_commutes_and_dominates(A, B):
    S = minkowski_sum(A, B)
    assert S == minkowski_sum(B, A)
    # Brunn-Minkowski on the line
    assert measure(S) >= measure(A) + measure(B)
    assert S.min == A.min + B.min and S.max == A.max + B.max


@given(interval_unions(), interval_unions(), interval_unions())
def test_sum_associates(A, B, C):
    assert minkowski_sum(minkowski_sum(A, B), C) == minkowski_sum(A, minkowski_sum(B, C))


@given(interval_unions(), rationals, rationals)
def test_truncations_tile(A, a, b):
    lo, hi = min(a, b), max(a, b)
    mid = (lo + hi) / 2
    left, right = truncate(A, lo, mid), truncate(A, mid, hi)
    assert overlap_measure(left, right) == 0
    assert measure(left) + measure(right) == measure(truncate(A, lo, hi))


@given(interval_unions(max_parts=3), interval_unions(max_parts=3))
def test_grid_one_sided(A, B):
    exact = float(measure(minkowski_sum(A, B)))
    est = grid_oracle(A, B, 2 ** 10)
    assert est >= exact - 1e-12
    assert est - exact <= float(grid_error_bound(A, B, 2 ** 10)) + 1e-12
