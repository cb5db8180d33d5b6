"""Random generators shared by the property tests and the acceptance suite."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from lyusternik.boxes import BoxUnion
from lyusternik.integer_sets import IntegerSet
from lyusternik.real_sets import IntervalUnion1D


def rand_rational(rng: random.Random, hi: int = 8, den: int = 6) -> Fraction:
    q = rng.randint(1, den)
    return Fraction(rng.randint(0, hi * q), q)


def rand_intervals(rng: random.Random, max_parts: int = 4, hi: int = 8, den: int = 6) -> IntervalUnion1D:
    pairs = []
    for _ in range(rng.randint(1, max_parts)):
        a, b = rand_rational(rng, hi, den), rand_rational(rng, hi, den)
        if rng.random() < 0.15:
            b = a  # isolated points are compact sets too
        pairs.append((min(a, b), max(a, b)))
    return IntervalUnion1D.of(*pairs)


def rand_integers(rng: random.Random, size: int = 5, hi: int = 12) -> IntegerSet:
    return IntegerSet.of(rng.sample(range(-hi, hi), rng.randint(1, size)))


def rand_ap(rng: random.Random, rho: int, max_len: int = 5) -> IntegerSet:
    start = rng.randint(-10, 10)
    return IntegerSet.of([start + rho * t for t in range(rng.randint(1, max_len))])


def rand_boxes(rng: random.Random, d: int, max_boxes: int = 3, hi: int = 4) -> BoxUnion:
    boxes = []
    for _ in range(rng.randint(1, max_boxes)):
        box = []
        for _ in range(d):
            a, b = rand_rational(rng, hi, 2), rand_rational(rng, hi, 2)
            box.append((min(a, b), max(a, b)))
        boxes.append(box)
    return BoxUnion.of(*boxes)


rationals = st.builds(Fraction, st.integers(-24, 24), st.integers(1, 6))
nonneg_rationals = st.builds(Fraction, st.integers(0, 24), st.integers(1, 6))


@st.composite
def interval_unions(draw, max_parts: int = 4):
    pairs = []
    for _ in range(draw(st.integers(1, max_parts))):
        a, b = draw(rationals), draw(rationals)
        pairs.append((min(a, b), max(a, b)))
    return IntervalUnion1D.of(*pairs)


@st.composite
def integer_sets(draw, max_size: int = 6):
    return IntegerSet.of(draw(st.lists(st.integers(-15, 15), min_size=1, max_size=max_size)))


@st.composite
def box_unions(draw, d: int = 2, max_boxes: int = 3):
    boxes = []
    for _ in range(draw(st.integers(1, max_boxes))):
        box = []
        for _ in range(d):
            a, b = draw(rationals), draw(rationals)
            box.append((min(a, b), max(a, b)))
        boxes.append(box)
    return BoxUnion.of(*boxes)
