import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyusternik.games import (
    SetFunction,
    bumped_cardinality_function,
    cardinality_function,
    concave_extension_eval,
    fsa_check_core,
    fsa_check_enum,
    is_supermodular,
    modular_function,
    partition_value,
)
from lyusternik.partitions import leave_one_out
from lyusternik.rational import mask_of

H = Fraction(1, 2)
# volumes of subset sums of ({0,1}, [0,1], [0,1])
NU = SetFunction(3, tuple(map(Fraction, (0, 0, 1, 2, 1, 2, 2, 3))))
BAD = SetFunction.from_callable(3, lambda S: {1: H, 2: Fraction(5, 2), 3: Fraction(3)}[bin(S).count("1")])
ZERO = SetFunction(3, (Fraction(0),) * 8)


def test_supermodular_examples():
    rep = is_supermodular(NU)
    assert not rep.holds
    assert rep.witness == (mask_of([1, 2]), mask_of([1, 3]))
    assert (rep.lhs, rep.rhs) == (3, 4)
    assert is_supermodular(modular_function([1, H, 3])).holds
    assert is_supermodular(cardinality_function(4)).holds


def test_core_examples():
    rep = fsa_check_core(NU)
    assert rep.holds
    assert rep.subgames[0b111].allocation == {1: 1, 2: 1, 3: 1}
    rep = fsa_check_core(BAD)
    assert not rep.holds
    cert = rep.subgames[0b111]
    assert cert.value == Fraction(15, 4) and cert.target == 3
    assert cert.witness.items() == leave_one_out(3).items()
    rep = fsa_check_core(ZERO)
    assert rep.holds and all(t == 0 for t in rep.subgames[0b111].allocation.values())


def test_enum_examples():
    for v in (NU, BAD, ZERO, cardinality_function(4), bumped_cardinality_function(4)):
        assert fsa_check_enum(v).holds == fsa_check_core(v).holds
    assert fsa_check_enum(cardinality_function(4)).holds
    assert fsa_check_enum(bumped_cardinality_function(4)).holds


def test_set_function_errors():
    with pytest.raises(ValueError):
        SetFunction(2, (Fraction(1), Fraction(0), Fraction(0), Fraction(0)))
    with pytest.raises(ValueError):
        SetFunction.from_mapping(2, {1: 1, 2: 1})
    with pytest.raises(ValueError):
        fsa_check_enum(SetFunction(7, (Fraction(0),) * 128))


def test_extension_examples():
    assert concave_extension_eval(NU, [0, 0, 0]) == 0
    for S in range(8):
        x = [(S >> i) & 1 for i in range(3)]
        assert concave_extension_eval(NU, x) == NU(S)
    val = concave_extension_eval(NU, [2, 1, 1])
    assert val >= 4
    assert concave_extension_eval(BAD, [1, 1, 1]) == Fraction(15, 4)
    with pytest.raises(ValueError):
        concave_extension_eval(NU, [1, -1, 0])


def test_parallel_matches_serial():
    assert fsa_check_core(BAD, jobs=2).holds == fsa_check_core(BAD).holds


values = st.builds(Fraction, st.integers(-4, 12), st.integers(1, 3))


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda M: st.tuples(st.just(M), st.lists(values, min_size=(1 << M) - 1,
                                                                          max_size=(1 << M) - 1))))
def test_core_and_enum_agree(arg):
    M, vals = arg
    v = SetFunction(M, (Fraction(0),) + tuple(vals))
    core, enum = fsa_check_core(v), fsa_check_enum(v)
    assert core.holds == enum.holds
    for T, cert in core.subgames.items():
        assert cert.value == enum.subgames[T].value
        if cert.witness is not None:
            assert partition_value(v, cert.witness) > v(T)


def test_supermodular_implies_fsa():
    rng = random.Random(7)
    for _ in range(20):
        w = [rng.randint(0, 5) for _ in range(4)]
        # a convex function of a modular one is supermodular
        v = SetFunction.from_callable(4, lambda S, w=w: sum(w[i] for i in range(4) if S >> i & 1) ** 2)
        assert is_supermodular(v).holds and fsa_check_core(v).holds
