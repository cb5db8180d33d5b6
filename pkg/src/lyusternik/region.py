"""Volume vectors of Minkowski subset sums and the sets that realize them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .boxes import BoxUnion
from .decomposition import subset_sums
from .games import SetFunction, fsa_check_core, is_supermodular
from .integer_sets import IntegerSet
from .partitions import FractionalPartition
from .polygons import ConvexPolygon
from .rational import check_ground, full_mask, mask_of, members, to_rational
from .real_sets import EmptySetError, IntervalUnion1D

PRODUCT_TOL = 1e-9
KINDS = {"1d": IntervalUnion1D, "integer": IntegerSet, "boxes": BoxUnion, "polygon": ConvexPolygon}


@dataclass(frozen=True)
class NuVector:
    """``entries[S]`` is the volume (or cardinality) of the sum over ``S``."""

    M: int
    dim: int
    entries: tuple[Fraction, ...]

    def __getitem__(self, S: int) -> Fraction:
        return self.entries[S]

    def as_set_function(self) -> SetFunction:
        return SetFunction(self.M, self.entries)

    def is_monotone(self) -> bool:
        return all(self.entries[S] <= self.entries[S | (1 << i)]
                   for S in range(1 << self.M) for i in range(self.M))


def _kind(A: Sequence) -> str:
    if not A:
        raise ValueError("need at least one summand")
    for name, cls in KINDS.items():
        if all(isinstance(X, cls) for X in A):
            return name
    raise TypeError("summands must all be of one kind: " + ", ".join(KINDS))


def _dim(A: Sequence, kind: str) -> int:
    if kind == "boxes":
        dims = {X.dim for X in A}
        if len(dims) > 1:
            raise ValueError(f"summands of mixed dimensions {sorted(dims)}")
        return dims.pop()
    return {"1d": 1, "integer": 0, "polygon": 2}[kind]


def nu_vector(A: Sequence, kind: str | None = None) -> NuVector:
    """All ``2^M`` subset-sum measures, each sum built from a smaller one."""
    A = tuple(A)
    found = _kind(A)
    if kind is not None and kind != found:
        raise TypeError(f"requested kind {kind!r} but summands are {found!r}")
    check_ground(len(A))
    if any(X.is_empty() if hasattr(X, "is_empty") else not X.vertices for X in A):
        raise EmptySetError("every summand must be nonempty")
    sums = subset_sums(A)
    entries = (Fraction(0),) + tuple(Fraction(sums[S].measure()) for S in range(1, 1 << len(A)))
    return NuVector(len(A), _dim(A, found), entries)


@dataclass(frozen=True)
class InequalityReport:
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    exponent_lhs: float | None = None  # |sum|^(1/d) form, d = 1 only
    exponent_rhs: float | None = None

    @property
    def holds(self) -> bool:
        return self.slack >= 0


def verify_fsa(A: Sequence, P: FractionalPartition) -> InequalityReport:
    """Evaluate both sides of ``|sum A| >= sum_S beta_S |sum_S A|`` directly.

    Integer summands use ``|.| - 1`` on both sides, the form that holds for
    cardinalities.
    """
    A = tuple(A)
    if P.ground != full_mask(len(A)):
        raise ValueError(f"partition must be of [1..{len(A)}]")
    nu = nu_vector(A)
    corr = 1 if _kind(A) == "integer" else 0
    lhs = nu[full_mask(len(A))] - corr
    rhs = sum((w * (nu[S] - corr) for S, w in P.items()), Fraction(0))
    if nu.dim == 1:
        return InequalityReport(lhs, rhs, lhs - rhs, float(lhs), float(rhs))
    return InequalityReport(lhs, rhs, lhs - rhs)


# -- realizing three values -----------------------------------------------------

def realize_two(alpha, beta, c, d: int) -> tuple[BoxUnion, BoxUnion]:
    """Two compact sets with volumes ``alpha^d``, ``beta^d`` and sum volume ``c``.

    Requires ``c >= (alpha + beta)^d``. With ``alpha > 0``: a cube of side
    alpha, plus a cube of side beta touching it at the origin, plus points
    ``alpha e_1, ..., q alpha e_1`` and ``(q alpha + r) e_1``, where
    ``(c - (alpha + beta)^d) / alpha^(d-1) = q alpha + r`` with
    ``0 <= r < alpha``. Each point drags a copy of the first cube along the
    first axis, adding exactly the missing volume.
    """
    a, b, c = to_rational(alpha), to_rational(beta), to_rational(c)
    if not isinstance(d, int) or d < 1:
        raise ValueError("dimension must be a positive integer")
    if a < 0 or b < 0:
        raise ValueError("side lengths must be nonnegative")
    if c < (a + b) ** d:
        raise ValueError(f"need c >= (alpha + beta)^d = {(a + b) ** d}, got {c}")
    if a == 0 and b == 0:
        if d == 1:
            raise ValueError("two null sets in dimension 1 with positive sum need a Cantor-type "
                             "construction, which is not supported")
        zeros = [(0, 0)] * (d - 1)
        A1 = BoxUnion.of([(0, c)] + zeros)
        A2 = BoxUnion.of([(0, 0)] + [(0, 1)] * (d - 1))
        return A1, A2
    if a == 0:
        A2, A1 = realize_two(b, a, c, d)
        return A1, A2
    extra = (c - (a + b) ** d) / a ** (d - 1)
    q = math.floor(extra / a)
    r = extra - q * a
    A1 = BoxUnion.cube(0, a, d)
    rest = [0] * (d - 1)
    pts = [[i * a] + rest for i in range(1, q + 1)] + [[q * a + r] + rest]
    A2 = BoxUnion(d, BoxUnion.cube(-b, 0, d).boxes + BoxUnion.points(pts).boxes)
    return A1, A2.simplified()


# -- products of low-dimensional factors ----------------------------------------

@dataclass(frozen=True)
class ProductReport:
    d: int
    dims: tuple[int, ...]
    convex: tuple[bool, ...]
    lhs: float  # |sum A|^(1/d)
    rhs: float  # sum beta_S |sum_S A|^(1/d)
    holder_bound: float  # prod_f (sum beta_S |sum_S C_f|^(1/d_f))^(d_f/d)
    factor_slacks: tuple[float, ...]  # per factor, in its own exponent 1/d_f
    exact_volumes: dict = field(hash=False, default_factory=dict)  # mask -> exact product volume

    @property
    def all_convex(self) -> bool:
        return all(self.convex)

    @property
    def holds(self) -> bool:
        return self.lhs - self.rhs >= -PRODUCT_TOL * max(1.0, self.lhs)

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


def _signature(F) -> tuple[str, int, bool]:
    if isinstance(F, ConvexPolygon):
        return ("polygon", 2, True)
    if isinstance(F, IntervalUnion1D):
        return ("1d", 1, F.is_interval())
    if isinstance(F, BoxUnion):
        convex = len(F.simplified().boxes) == 1
        if F.dim >= 2 and not convex:
            raise ValueError("factors of dimension >= 2 must be convex (a single box or a polygon)")
        return ("boxes", F.dim, convex)
    raise TypeError(f"unsupported factor {type(F).__name__}")


def verify_product(factors: Sequence[Sequence], P: FractionalPartition) -> ProductReport:
    """Check the d-th root inequality for sets that are products of factors.

    ``factors[i]`` lists the factors of summand ``i + 1``. Sums of products
    are products of sums, so every volume is exact; only the roots are taken
    in floating point.
    """
    M = len(factors)
    if M == 0:
        raise ValueError("need at least one summand")
    if P.ground != full_mask(M):
        raise ValueError(f"partition must be of [1..{M}]")
    sigs = [tuple(_signature(F) for F in row) for row in factors]
    shape = [(s[0], s[1]) for s in sigs[0]]
    for i, s in enumerate(sigs[1:], start=2):
        if [(t[0], t[1]) for t in s] != shape:
            raise ValueError(f"summand {i} has factor signature {s}, expected {shape}")
    if not shape:
        raise ValueError("summands need at least one factor")
    dims = tuple(dm for _, dm in shape)
    convex = tuple(all(sigs[i][f][2] for i in range(M)) for f in range(len(shape)))
    d = sum(dims)
    per = []
    for f in range(len(shape)):
        sums = subset_sums([factors[i][f] for i in range(M)])
        per.append({S: Fraction(X.measure()) for S, X in sums.items()})
    full = full_mask(M)
    items = P.items()
    vol = {S: math.prod(p[S] for p in per) for S in range(1, 1 << M)}
    lhs = float(vol[full]) ** (1 / d)
    rhs = sum(float(w) * float(vol[S]) ** (1 / d) for S, w in items)
    bound = 1.0
    slacks = []
    for p, df in zip(per, dims):
        side = sum(float(w) * float(p[S]) ** (1 / df) for S, w in items)
        slacks.append(float(p[full]) ** (1 / df) - side)
        bound *= side ** (df / d)
    return ProductReport(d, dims, convex, lhs, rhs, bound, tuple(slacks), vol)


# -- counterexamples -----------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    name: str
    sets: tuple
    lhs: Fraction  # |A+B+C| + |A|
    rhs: Fraction  # |A+B| + |A+C|
    nu: NuVector | None = None
    functions: dict = field(hash=False, default_factory=dict)


MAX_LATTICE_POINTS = 4096


def counterexample(which: str, k: int = 3, d: int = 2, M: int = 3) -> Counterexample:
    """Fixtures showing that subset-sum volumes need not be supermodular."""
    if which == "supermodularity_1d":
        A = IntervalUnion1D.of((0, 0), (1, 1))
        B = C = IntervalUnion1D.of((0, 1))
        nu = nu_vector((A, B, C))
        return Counterexample(which, (A, B, C), nu[0b111] + nu[0b001], nu[0b011] + nu[0b101], nu)
    if which == "supermodularity_cubes":
        if not isinstance(k, int) or not isinstance(d, int) or k < 1 or d < 1:
            raise ValueError("need integers k >= 1 and d >= 1")
        if (k + 1) ** d > MAX_LATTICE_POINTS:
            raise ValueError(f"lattice {{0..{k}}}^{d} has more than {MAX_LATTICE_POINTS} points")
        pts = [[]]
        for _ in range(d):
            pts = [p + [x] for p in pts for x in range(k + 1)]
        A = BoxUnion.points(pts)
        B = C = BoxUnion.cube(0, 1, d)
        nu = nu_vector((A, B, C))
        return Counterexample(which, (A, B, C), nu[0b111] + nu[0b001], nu[0b011] + nu[0b101], nu)
    if which == "alpha_beta_fixtures":
        check_ground(M)
        if M < 3:
            raise ValueError("need M >= 3")
        alpha = SetFunction.from_callable(M, lambda S: len(members(S)))
        full = full_mask(M)
        beta = SetFunction.from_callable(M, lambda S: len(members(S)) + (S == full))
        fns = {"alpha": alpha, "beta": beta}
        return Counterexample(which, (), Fraction(beta(full)), Fraction(alpha(full)), None, fns)
    raise ValueError(f"unknown counterexample {which!r}; choose supermodularity_1d, "
                     "supermodularity_cubes or alpha_beta_fixtures")


def set_function_profile(v: SetFunction) -> dict:
    """Supermodularity and FSA verdicts for one set function."""
    return {"supermodular": is_supermodular(v).holds, "fsa": fsa_check_core(v).holds}


def permute(A: Sequence, perm: Sequence[int]) -> tuple:
    """``perm[i]`` (1-based) is the summand placed at position ``i + 1``."""
    return tuple(A[p - 1] for p in perm)


def permuted_mask(S: int, perm: Sequence[int]) -> int:
    """Image of ``S`` (positions in the permuted tuple) in the original tuple."""
    return mask_of(perm[i - 1] for i in members(S))
