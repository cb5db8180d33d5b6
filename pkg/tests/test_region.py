import itertools
import random
from fractions import Fraction

import pytest
from helpers import interval_unions
from hypothesis import given, settings
from hypothesis import strategies as st

from lyusternik.boxes import BoxUnion
from lyusternik.games import fsa_check_core, is_supermodular
from lyusternik.integer_sets import IntegerSet
from lyusternik.partitions import extreme_partitions, leave_one_out, singletons
from lyusternik.polygons import ConvexPolygon
from lyusternik.real_sets import IntervalUnion1D
from lyusternik.region import (
    counterexample,
    nu_vector,
    permute,
    permuted_mask,
    realize_two,
    verify_fsa,
    verify_product,
)

U = IntervalUnion1D.of
H = Fraction(1, 2)
HALVES = U((0, H), (1, 3 * H))
NU_SETS = (U((0, 0), (1, 1)), U((0, 1)), U((0, 1)))


def test_nu_examples():
    assert nu_vector(NU_SETS).entries == tuple(map(Fraction, (0, 0, 1, 2, 1, 2, 2, 3)))
    assert set(nu_vector([U((2, 2)), U((5, 5))]).entries) == {0}
    nu = nu_vector([U((0, 1))] * 3)
    assert all(nu[S] == bin(S).count("1") for S in range(8))
    with pytest.raises(TypeError):
        nu_vector([U((0, 1)), IntegerSet.of([0])])


def test_verify_fsa_examples():
    assert verify_fsa([HALVES] * 3, leave_one_out(3)).slack == 0
    r = verify_fsa(NU_SETS, leave_one_out(3))
    assert (r.lhs, r.rhs, r.slack) == (3, 3, 0)
    r = verify_fsa([IntegerSet.of([0, 1])] * 3, leave_one_out(3))
    assert r.lhs == r.rhs == 3


@settings(max_examples=25)
@given(st.lists(interval_unions(max_parts=3), min_size=2, max_size=3))
def test_nu_structure(A):
    nu = nu_vector(A)
    assert nu[0] == 0 and nu.is_monotone()
    assert fsa_check_core(nu.as_set_function()).holds
    # scaling by t multiplies every entry by t (a cone)
    t = Fraction(3, 2)
    scaled = nu_vector([IntervalUnion1D(tuple((a * t, b * t) for a, b in X.intervals)) for X in A])
    assert scaled.entries == tuple(t * x for x in nu.entries)
    # permuting the sets permutes the entries
    for perm in itertools.permutations(range(1, len(A) + 1)):
        pn = nu_vector(permute(A, perm))
        assert all(pn[S] == nu[permuted_mask(S, perm)] for S in range(1 << len(A)))


def test_realize_examples():
    A1, A2 = realize_two(1, 1, 3, 1)
    assert A1 == BoxUnion.of([(0, 1)])
    assert (A1.volume(), A2.volume(), (A1 + A2).volume()) == (1, 1, 3)
    A1, A2 = realize_two(1, 0, 2, 2)
    assert A1 == BoxUnion.cube(0, 1, 2) and A2.volume() == 0 and (A1 + A2).volume() == 2
    A1, A2 = realize_two(0, 0, 1, 2)
    assert (A1.volume(), A2.volume(), (A1 + A2).volume()) == (0, 0, 1)
    A1, A2 = realize_two(0, 0, 5, 3)
    assert (A1 + A2).volume() == 5
    with pytest.raises(ValueError):
        realize_two(1, 1, 3, 2)
    with pytest.raises(ValueError):
        realize_two(0, 0, 1, 1)


def test_realize_random():
    rng = random.Random(11)
    for _ in range(30):
        d = rng.randint(1, 3)
        a, b = Fraction(rng.randint(0, 6), rng.randint(1, 3)), Fraction(rng.randint(1, 6), rng.randint(1, 3))
        c = (a + b) ** d + Fraction(rng.randint(0, 30), rng.randint(1, 4))
        A1, A2 = realize_two(a, b, c, d)
        assert (A1.volume(), A2.volume(), (A1 + A2).volume()) == (a ** d, b ** d, c)


def test_product_examples():
    sq = BoxUnion.cube(0, 1, 2)
    r = verify_product([[sq]] * 3, leave_one_out(3))
    assert r.all_convex and abs(r.lhs - 3) < 1e-12 and abs(r.rhs - 3) < 1e-12 and r.holds
    tri = ConvexPolygon.from_vertices([(0, 0), (1, 0), (0, 1)])
    r = verify_product([[tri, U((0, 0), (1, 2))]] * 3, leave_one_out(3))
    assert r.holds and not r.all_convex and r.d == 3
    assert r.lhs >= r.holder_bound - 1e-9
    r = verify_product([[HALVES]] * 3, leave_one_out(3))
    assert abs(r.slack - float(verify_fsa([HALVES] * 3, leave_one_out(3)).slack)) < 1e-12
    with pytest.raises(ValueError):
        verify_product([[BoxUnion.of([(0, 1), (0, 1)], [(2, 3), (0, 1)])]] * 2, singletons(2))


def test_counterexamples():
    ce = counterexample("supermodularity_1d")
    assert (ce.lhs, ce.rhs) == (3, 4)
    assert not is_supermodular(ce.nu.as_set_function()).holds
    assert fsa_check_core(ce.nu.as_set_function()).holds
    for k, d in ((1, 1), (3, 2), (2, 3)):
        ce = counterexample("supermodularity_cubes", k=k, d=d)
        assert ce.lhs == (k + 2) ** d and ce.rhs == 2 * (k + 1) ** d
    ce = counterexample("alpha_beta_fixtures", M=3)
    alpha, beta = ce.functions["alpha"], ce.functions["beta"]
    assert beta(7) == 4 and alpha(7) == 3
    for v in (alpha, beta):
        assert is_supermodular(v).holds and fsa_check_core(v).holds
    with pytest.raises(ValueError):
        counterexample("nope")
    with pytest.raises(ValueError):
        counterexample("supermodularity_cubes", k=20, d=3)


def test_extreme_partition_sweep_small():
    A = [HALVES, U((0, 0), (2, 3)), U((0, 1))]
    for P in extreme_partitions(3):
        assert verify_fsa(A, P).holds
