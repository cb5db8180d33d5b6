from fractions import Fraction

import pytest
from helpers import rationals
from hypothesis import given

from lyusternik.rational import (
    fmt,
    full_mask,
    mask_key,
    mask_of,
    members,
    parse_mask_key,
    popcount,
    rat_arith,
    solve_exact,
    submasks,
    subset_iter,
    to_rational,
)


def test_arith_examples():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert to_rational("2/4") == Fraction(1, 2)
    assert rat_arith(Fraction(3, 2), Fraction(4, 9), "mul") == Fraction(2, 3)


def test_arith_errors():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "pow")


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "x"])
def test_to_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        to_rational(bad)


@given(rationals, rationals)
def test_arith_canonical(a, b):
    for op in ("add", "sub", "mul"):
        r = rat_arith(a, b, op)
        assert r.denominator > 0
        assert to_rational(fmt(r)) == r
    assert rat_arith(a, b, "cmp") == -rat_arith(b, a, "cmp")


def test_subset_iter():
    assert list(subset_iter(1)) == [0, 1]
    assert len(list(subset_iter(2))) == 4
    subsets = list(subset_iter(3))
    assert len(subsets) == 8 and members(subsets[-1]) == [1, 2, 3]


def test_masks():
    assert mask_of([1, 3]) == 0b101
    assert members(0b101) == [1, 3]
    assert popcount(full_mask(5)) == 5
    assert mask_key(0b101) == "[1,3]"
    assert parse_mask_key("[1,3]") == 0b101
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]


def test_solve_exact():
    x = solve_exact([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_exact([[1, 1], [2, 2]], [1, 2]) is None
