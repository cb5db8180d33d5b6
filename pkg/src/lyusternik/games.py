"""Set functions on 2^[M]: supermodularity, fractional superadditivity, extension.

Fractional superadditivity is decided two ways that must agree: an exact LP
per subgame (Bondareva-Shapley; the LP dual is the core allocation) and
direct evaluation against every extreme fractional partition.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .lp import LPError, maximize
from .partitions import EXTREME_CAP, FractionalPartition, extreme_partitions
from .rational import check_ground, full_mask, members, popcount, submasks, to_rational


@dataclass(frozen=True)
class SetFunction:
    """Values indexed by subset mask; ``values[0]`` is v(∅) = 0."""

    M: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        check_ground(self.M)
        if len(self.values) != 1 << self.M:
            raise ValueError(f"need {1 << self.M} values, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError("a set function must vanish on the empty set")

    @classmethod
    def from_mapping(cls, M: int, values: Mapping[int, object]) -> "SetFunction":
        check_ground(M)
        missing = [S for S in range(1, 1 << M) if S not in values]
        if missing:
            raise ValueError(f"missing values for subsets {[members(S) for S in missing[:4]]}")
        extra = [S for S in values if not 0 <= S < 1 << M]
        if extra:
            raise ValueError("subset outside [M]")
        return cls(M, tuple(to_rational(values.get(S, 0)) for S in range(1 << M)))

    @classmethod
    def from_callable(cls, M: int, fn: Callable[[int], object]) -> "SetFunction":
        check_ground(M)
        return cls(M, (Fraction(0),) + tuple(to_rational(fn(S)) for S in range(1, 1 << M)))

    def __call__(self, S: int) -> Fraction:
        return self.values[S]

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)


def modular_function(weights: Sequence) -> SetFunction:
    w = [to_rational(x) for x in weights]
    return SetFunction.from_callable(len(w), lambda S: sum((w[i - 1] for i in members(S)), Fraction(0)))


def cardinality_function(M: int) -> SetFunction:
    return SetFunction.from_callable(M, popcount)


def bumped_cardinality_function(M: int) -> SetFunction:
    """Cardinality on proper subsets, ``M + 1`` on the full set."""
    full = full_mask(M)
    return SetFunction.from_callable(M, lambda S: popcount(S) + (S == full))


@dataclass(frozen=True)
class SupermodularReport:
    holds: bool
    witness: tuple[int, int] | None = None
    lhs: Fraction | None = None  # v(S ∪ T) + v(S ∩ T)
    rhs: Fraction | None = None  # v(S) + v(T)


def is_supermodular(v: SetFunction) -> SupermodularReport:
    """Scan all incomparable pairs in mask order; report the first violation."""
    n = 1 << v.M
    vals = v.values
    for S in range(1, n):
        for T in range(S + 1, n):
            if S & T == S or S & T == T:
                continue
            lhs = vals[S | T] + vals[S & T]
            rhs = vals[S] + vals[T]
            if lhs < rhs:
                return SupermodularReport(False, (S, T), lhs, rhs)
    return SupermodularReport(True)


@dataclass(frozen=True)
class CoreCertificate:
    ground: int
    balanced: bool
    value: Fraction  # max of sum beta_S v(S) over fractional partitions of the ground
    target: Fraction  # v(ground)
    allocation: Mapping[int, Fraction] = field(hash=False)
    witness: FractionalPartition | None = None


@dataclass(frozen=True)
class FSAReport:
    holds: bool
    subgames: Mapping[int, CoreCertificate] = field(hash=False)

    def violations(self) -> list[CoreCertificate]:
        return [c for _, c in sorted(self.subgames.items()) if not c.balanced]


def _core_subgame(v: SetFunction, T: int) -> CoreCertificate:
    elems = members(T)
    cols = [S for S in submasks(T) if S]
    A = [[(S >> (i - 1)) & 1 for S in cols] for i in elems]
    res = maximize([v(S) for S in cols], A, [1] * len(elems))
    if res.status != "optimal":
        raise LPError(f"subgame {elems}: LP {res.status}, which cannot happen for a set function")
    t = dict(zip(elems, res.duals))
    # the duals must be a cheapest dominating allocation
    for S in cols:
        if sum(t[i] for i in members(S)) < v(S):
            raise LPError(f"subgame {elems}: dual allocation violates the constraint of {members(S)}")
    if sum(t.values()) != res.value:
        raise LPError(f"subgame {elems}: duality gap")
    balanced = res.value == v(T)
    witness = None
    if not balanced:
        w = {S: x for S, x in zip(cols, res.x) if x > 0}
        witness = FractionalPartition(v.M, T, w)
    return CoreCertificate(T, balanced, res.value, v(T), t, witness)


def _map(fn, args, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def fsa_check_core(v: SetFunction, jobs: int = 1) -> FSAReport:
    """Solve the Bondareva-Shapley LP on every nonempty subgame.

    For subgame ``T`` the LP maximizes ``sum beta_S v(S)`` over fractional
    partitions of ``T``; its dual is the core LP ``min sum t_i`` subject to
    ``sum_{i in S} t_i >= v(S)``. The subgame is balanced iff the optimum is
    ``v(T)``; otherwise the optimal partition is returned as a witness.
    For nonnegative ``v`` the allocation is automatically nonnegative.
    """
    Ts = list(range(1, 1 << v.M))
    certs = _map(_core_subgame, [(v, T) for T in Ts], jobs)
    sub = dict(zip(Ts, certs))
    return FSAReport(all(c.balanced for c in certs), sub)


@dataclass(frozen=True)
class EnumVerdict:
    ground: int
    balanced: bool
    value: Fraction
    target: Fraction
    witness: FractionalPartition | None = None


@dataclass(frozen=True)
class FSAEnumReport:
    holds: bool
    subgames: Mapping[int, EnumVerdict] = field(hash=False)


def partition_value(v: SetFunction, P: FractionalPartition) -> Fraction:
    return sum((w * v(S) for S, w in P.items()), Fraction(0))


def _enum_subgame(v: SetFunction, T: int) -> EnumVerdict:
    n = popcount(T)
    best_val, best = None, None
    for P in extreme_partitions(n):
        Q = P.relabel(T, v.M)
        val = partition_value(v, Q)
        if best_val is None or val > best_val:
            best_val, best = val, Q
    balanced = best_val == v(T)
    return EnumVerdict(T, balanced, best_val, v(T), None if balanced else best)


def fsa_check_enum(v: SetFunction, jobs: int = 1) -> FSAEnumReport:
    """Test every subgame against all extreme fractional partitions."""
    if v.M > EXTREME_CAP:
        raise ValueError(f"enumeration check supports M <= {EXTREME_CAP}")
    Ts = list(range(1, 1 << v.M))
    res = _map(_enum_subgame, [(v, T) for T in Ts], jobs)
    return FSAEnumReport(all(r.balanced for r in res), dict(zip(Ts, res)))


def concave_extension_eval(f: SetFunction, x: Sequence) -> Fraction:
    """Largest ``sum beta_S f(S)`` with ``beta >= 0`` and ``sum beta_S 1_S = x``."""
    xs = [to_rational(t) for t in x]
    if len(xs) != f.M:
        raise ValueError(f"point must have {f.M} coordinates")
    if any(t < 0 for t in xs):
        raise ValueError("the extension is defined on the nonnegative orthant")
    if all(t == 0 for t in xs):
        return Fraction(0)
    cols = list(range(1, 1 << f.M))
    A = [[(S >> i) & 1 for S in cols] for i in range(f.M)]
    res = maximize([f(S) for S in cols], A, xs)
    if res.status != "optimal":
        raise LPError(f"extension LP {res.status}")
    return res.value
