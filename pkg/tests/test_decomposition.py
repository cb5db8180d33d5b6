import dataclasses
import random
from fractions import Fraction

import pytest
from helpers import box_unions, integer_sets, interval_unions
from hypothesis import given, settings
from hypothesis import strategies as st

from lyusternik.boxes import BoxUnion
from lyusternik.decomposition import (
    SumTable,
    VerificationError,
    certify_1d,
    certify_boxes,
    certify_int,
    normalize_tuple,
    pieces_1d,
    pieces_int,
    verify,
    verify_certificate,
)
from lyusternik.integer_sets import IntegerSet
from lyusternik.partitions import (
    RegularCover,
    extreme_partitions,
    leave_one_out,
    singletons,
)
from lyusternik.real_sets import IntervalUnion1D

H = Fraction(1, 2)
U = IntervalUnion1D.of
Z = IntegerSet.of
HALVES = U((0, H), (1, 3 * H))
PAIRS3 = RegularCover.from_sets([[1, 2], [2, 3], [1, 3]])
COVER5 = RegularCover.from_sets([[2, 3], [1, 2, 4], [1, 2, 4, 5], [1, 3, 5], [3, 4, 5]])


def test_equality_fixture():
    cert = certify_1d([HALVES] * 3, leave_one_out(3))
    assert cert.fractional_sides() == (Fraction(9, 2), Fraction(9, 2))
    assert cert.slack == 0 and cert.equality_condition_met
    assert verify(cert) == []


def test_point_and_interval():
    A = [U((0, 0), (1, 2))] * 3
    cert = certify_1d(A, leave_one_out(3))
    assert (cert.lhs, cert.rhs, cert.slack) == (10, 9, 1)
    assert not cert.equality_condition_met
    cert = certify_1d([U((0, 0), (1, 2)), U((0, 1))], singletons(2))
    assert cert.total_measure == 3 and cert.slack == 1


def test_integer_examples():
    A = [Z([0, 1])] * 3
    cert = certify_int(A, leave_one_out(3))
    assert (cert.lhs, cert.rhs) == (6, 6) and cert.equality_condition_met
    cert = certify_int([Z([0, 1, 3]), Z([0, 2]), Z([0, 1])], leave_one_out(3))
    assert (cert.lhs, cert.rhs) == (12, 11) and not cert.equality_condition_met
    cert = certify_int([Z([0, 1]), Z([0, 2]), Z([0, 5])], leave_one_out(3))
    assert (cert.lhs, cert.rhs) == (14, 9)


def test_singletons_give_zero():
    A = [Z([3]), Z([-1])]
    cert = certify_int(A, singletons(2))
    assert cert.lhs == cert.rhs == 0
    assert all(0 not in p.piece.elements for p in cert.pieces)


def test_box_squares():
    sq = BoxUnion.cube(0, 1, 2)
    cert = certify_boxes([sq] * 3, leave_one_out(3))
    assert (cert.lhs, cert.rhs) == (18, 12)
    assert cert.equality_condition_met is None
    cert2 = certify_boxes([sq] * 3, leave_one_out(3), axis=1)
    assert cert2.axis == 1 and cert2.slack == 6


def test_pair_cover_layer_windows():
    layer = pieces_1d([HALVES] * 3, PAIRS3, 1)
    assert [p.window for p in layer] == [(0, 3), (3, Fraction(9, 2)), (Fraction(9, 2), Fraction(9, 2))]
    assert [p.translator for p in layer] == [0, 0b001, 0b011 & ~0b101]
    # the second piece is the sum over {2,3} shifted by a_1 = 3/2, cut to its window
    assert layer[1].shift == 3 * H and layer[1].piece == U((3, 9 * H))
    assert layer[0].piece == U((0, 3))
    assert layer[2].piece.is_empty()


def test_five_set_cover_layer_one():
    A = [U((0, 1))] * 5
    layer = pieces_1d(A, COVER5, 1)
    assert [p.window for p in layer] == [(0, 2), (2, 4), (4, 5), (5, 5), (5, 5)]
    assert [p.piece.measure() for p in layer] == [2, 2, 1, 0, 0]
    cert = certify_1d(A, COVER5)
    assert cert.q == 3 and cert.lhs == cert.rhs == 15


def test_five_set_cover_integer_layers():
    A = [Z([0, 1, 2])] * 5
    cert = certify_int(A, COVER5)
    # 3 * (11 - 1) = sum over the cover of (2 |S_j| + 1 - 1)
    assert cert.lhs == cert.rhs == 30
    for k in (1, 2, 3):
        assert sum(len(p.piece) for p in pieces_int(A, COVER5, k)) == 10


def test_normalization():
    sets, offsets, extremes = normalize_tuple([U((2, 3), (5, 6)), U((-1, 0))])
    assert offsets == (-2, 1) and extremes == (4, 1)
    assert sets[0] == U((0, 1), (3, 4))
    sets, _, extremes = normalize_tuple([Z([5, 7]), Z([0, 1])])
    assert sets == (Z([0, 2]), Z([0, 1])) and extremes == (2, 1)
    sets, _, extremes = normalize_tuple([BoxUnion.of([(1, 2), (0, 1)])])
    assert sets[0] == BoxUnion.cube(0, 1, 2)
    B = BoxUnion.of([(1, 2), (0, 1)], [(3, 4), (5, 6)])
    sets, offsets, extremes = normalize_tuple([B])
    assert offsets == ((-1, 0),) and extremes == ((3, 5),)


def test_errors():
    with pytest.raises(ValueError):
        certify_1d([HALVES] * 2, leave_one_out(3))
    with pytest.raises(TypeError):
        certify_int([HALVES] * 3, leave_one_out(3))
    with pytest.raises(ValueError):
        pieces_1d([HALVES] * 3, PAIRS3, 3)


def _tamper(cert, **changes):
    return dataclasses.replace(cert, **changes)


def test_tampered_certificates_fail():
    cert = certify_1d([U((0, 0), (1, 2)), U((0, 1)), HALVES], leave_one_out(3))
    assert verify(cert) == []
    pieces = list(cert.pieces)
    grown = dataclasses.replace(pieces[0], piece=U((0, 100)))
    assert verify(_tamper(cert, pieces=[grown] + pieces[1:]))
    assert verify(_tamper(cert, pieces=pieces[1:]))
    assert verify(_tamper(cert, pieces=pieces + [pieces[0]]))
    assert verify(_tamper(cert, slack=cert.slack + 1))
    assert verify(_tamper(cert, rhs=cert.lhs + 1, slack=Fraction(-1)))
    bad = list(cert.recollected)
    bad[0] += 1
    assert verify(_tamper(cert, recollected=bad))
    moved = dataclasses.replace(pieces[1], window=(pieces[1].window[0] + H, pieces[1].window[1]))
    assert verify(_tamper(cert, pieces=[pieces[0], moved] + pieces[2:]))
    with pytest.raises(VerificationError):
        verify_certificate(_tamper(cert, total_measure=cert.total_measure + 1))


def test_table_reuse_and_mismatch():
    A = [HALVES, U((0, 1)), U((0, 0), (2, 3))]
    T = SumTable.of(A)
    for P in extreme_partitions(3):
        assert certify_1d(A, P, table=T).slack == certify_1d(A, P).slack
    with pytest.raises(ValueError):
        certify_1d([HALVES] * 3, leave_one_out(3), table=T)


@settings(max_examples=30)
@given(st.lists(interval_unions(max_parts=3), min_size=2, max_size=4), st.randoms(use_true_random=False))
def test_1d_any_cover_order(A, rnd):
    P = rnd.choice(extreme_partitions(len(A)))
    cert = certify_1d(A, P)
    assert cert.slack >= 0
    # any order of the cover sets gives another valid certificate
    sets = list(cert.cover.sets)
    rnd.shuffle(sets)
    C = RegularCover(cert.cover.M, cert.cover.ground, tuple(sets), cert.q)
    other = certify_1d(A, C)
    assert other.slack == cert.slack and verify(other) == []
    assert cert.recollected == cert.sumset_measures


@settings(max_examples=30)
@given(st.lists(integer_sets(), min_size=2, max_size=4), st.randoms(use_true_random=False))
def test_int_slack_nonnegative(A, rnd):
    cert = certify_int(A, rnd.choice(extreme_partitions(len(A))))
    assert cert.slack >= 0 and verify(cert) == []


@settings(max_examples=20)
@given(st.lists(box_unions(2), min_size=2, max_size=3), st.randoms(use_true_random=False), st.integers(0, 1))
def test_boxes_slack_nonnegative(A, rnd, axis):
    cert = certify_boxes(A, rnd.choice(extreme_partitions(len(A))), axis=axis)
    assert cert.slack >= 0 and verify(cert) == []


def test_translation_invariance():
    rng = random.Random(3)
    A = [U((0, 1), (3, 4)), HALVES, U((0, 0), (1, 1))]
    base = certify_1d(A, leave_one_out(3))
    for _ in range(5):
        t = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        moved = certify_1d([X.translate(t) for X in A], leave_one_out(3))
        assert moved.slack == base.slack
