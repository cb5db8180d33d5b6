"""Fractional partitions, regular q-covers and the cover functions h_k."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .rational import (
    check_ground,
    fmt,
    full_mask,
    mask_of,
    members,
    popcount,
    to_rational,
)

EXTREME_CAP = 6


class InvalidPartition(ValueError):
    """Raised with ``defects``: element -> (coverage - 1) for every bad element."""

    def __init__(self, message: str, defects: Mapping[int, Fraction] | None = None):
        super().__init__(message)
        self.defects = dict(defects or {})


@dataclass(frozen=True)
class FractionalPartition:
    M: int
    ground: int
    weights: Mapping[int, Fraction] = field(hash=False)

    def support(self) -> list[int]:
        return sorted(S for S, w in self.weights.items() if w > 0)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted((S, w) for S, w in self.weights.items() if w > 0)

    def key(self) -> tuple:
        return tuple(self.items())

    def relabel(self, ground: int, M: int | None = None) -> "FractionalPartition":
        """Map element ``k`` of ``[n]`` to the k-th element of ``ground``."""
        idx = members(ground)
        if popcount(self.ground) != len(idx):
            raise ValueError("relabel target has the wrong size")
        src = members(self.ground)
        pos = {e: idx[k] for k, e in enumerate(src)}
        w = {mask_of(pos[e] for e in members(S)): v for S, v in self.items()}
        return FractionalPartition(M or max(idx), ground, w)


@dataclass(frozen=True)
class RegularCover:
    M: int
    ground: int
    sets: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        if not self.sets:
            raise ValueError("cover needs at least one set")
        for S in self.sets:
            if S == 0:
                raise ValueError("cover sets must be nonempty")
            if S & ~self.ground:
                raise ValueError("cover set leaves the ground set")
        for i in members(self.ground):
            c = sum(1 for S in self.sets if S >> (i - 1) & 1)
            if c != self.q:
                raise InvalidPartition(f"element {i} covered {c} times, expected {self.q}",
                                       {i: Fraction(c - self.q, self.q)})

    @property
    def s(self) -> int:
        return len(self.sets)

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]], M: int | None = None) -> "RegularCover":
        """Build a cover from 1-based index lists; ``q`` is inferred."""
        masks = tuple(mask_of(S) for S in sets)
        ground = 0
        for m in masks:
            ground |= m
        if ground == 0:
            raise ValueError("cover needs a nonempty set")
        first = members(ground)[0]
        q = sum(1 for m in masks if m >> (first - 1) & 1)
        return cls(M or members(ground)[-1], ground, masks, q)

    def to_partition(self) -> FractionalPartition:
        """Re-aggregate: weight of S = multiplicity / q."""
        w: dict[int, Fraction] = {}
        for S in self.sets:
            w[S] = w.get(S, Fraction(0)) + Fraction(1, self.q)
        return FractionalPartition(self.M, self.ground, w)


@dataclass(frozen=True)
class CoverFunctions:
    """``table[k-1][i]`` is h_k(i), a 1-based index into the cover."""

    q: int
    ground: int
    table: tuple[Mapping[int, int], ...] = field(hash=False)

    def h(self, k: int, i: int) -> int:
        return self.table[k - 1][i]

    def preimage(self, k: int, j: int) -> int:
        """Mask of ``h_k^{-1}([1, j])``."""
        m = 0
        for i, hj in self.table[k - 1].items():
            if hj <= j:
                m |= 1 << (i - 1)
        return m


def validate_partition(weights: Mapping[int, object], T: int, M: int | None = None) -> FractionalPartition:
    """Check nonnegativity, support inside ``T`` and exact unit coverage."""
    if T == 0:
        raise InvalidPartition("ground set must be nonempty")
    M = M or members(T)[-1]
    check_ground(M)
    if T & ~full_mask(M):
        raise InvalidPartition("ground set exceeds [M]")
    w: dict[int, Fraction] = {}
    for S, raw in weights.items():
        val = to_rational(raw)
        if S == 0:
            raise InvalidPartition("the empty set cannot carry weight")
        if S & ~T:
            raise InvalidPartition(f"subset {members(S)} is not inside the ground set")
        if val < 0:
            raise InvalidPartition(f"negative weight {val} on {members(S)}")
        if val > 0:
            w[S] = w.get(S, Fraction(0)) + val
    defects = {}
    for i in members(T):
        cov = sum((v for S, v in w.items() if S >> (i - 1) & 1), Fraction(0))
        if cov != 1:
            defects[i] = cov - 1
    if defects:
        raise InvalidPartition("coverage defect: " + ", ".join(f"{i}: {'+' if d > 0 else ''}{fmt(d)}" for i, d in defects.items()),
                               defects)
    return FractionalPartition(M, T, w)


def leave_one_out(M: int) -> FractionalPartition:
    if M < 2:
        raise ValueError("leave-one-out needs M >= 2")
    full = full_mask(M)
    w = {full & ~(1 << i): Fraction(1, M - 1) for i in range(M)}
    return FractionalPartition(M, full, w)


def singletons(M: int) -> FractionalPartition:
    check_ground(M)
    return FractionalPartition(M, full_mask(M), {1 << i: Fraction(1) for i in range(M)})


def to_regular_cover(P: FractionalPartition) -> RegularCover:
    """Clear denominators: ``q`` is the lcm, each S repeated ``q * beta_S`` times."""
    items = P.items()
    q = 1
    for _, w in items:
        q = lcm(q, w.denominator)
    sets: list[int] = []
    for S, w in items:
        sets.extend([S] * int(w * q))
    return RegularCover(P.M, P.ground, tuple(sets), q)


def cover_functions(C: RegularCover) -> CoverFunctions:
    rows: list[dict[int, int]] = [dict() for _ in range(C.q)]
    for i in members(C.ground):
        hits = [j for j, S in enumerate(C.sets, start=1) if S >> (i - 1) & 1]
        for k, j in enumerate(hits):
            rows[k][i] = j
    return CoverFunctions(C.q, C.ground, tuple(rows))


def extreme_partitions(M: int) -> list[FractionalPartition]:
    """Vertices of the polytope of fractional partitions of ``[M]``.

    Depth-first search over linearly independent column sets (columns are the
    indicator vectors of nonempty subsets, in mask order). A set whose span
    first reaches the all-ones vector is solved exactly; it is a vertex iff
    every coefficient is positive. Each vertex has a unique support, so no
    vertex is produced twice.
    """
    if not isinstance(M, int) or not 1 <= M <= EXTREME_CAP:
        raise ValueError(f"extreme partitions are enumerated for 1 <= M <= {EXTREME_CAP}, got {M!r}")
    return [FractionalPartition(M, full_mask(M), dict(w)) for w in _extreme_supports(M)]


@lru_cache(maxsize=None)
def _extreme_supports(M: int) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    cols = [(m, tuple((m >> r) & 1 for r in range(M))) for m in range(1, 1 << M)]
    ones = tuple([1] * M)
    found: list[tuple[tuple[int, Fraction], ...]] = []

    def reduce(v, b, p):
        vp = v[p]
        if vp == 0:
            return v
        bp = b[p]
        w = [bp * x - vp * y for x, y in zip(v, b)]
        g = 0
        for x in w:
            g = gcd(g, x)
        return tuple(x // g for x in w) if g > 1 else tuple(w)

    def pivot(v):
        for p, x in enumerate(v):
            if x:
                return p
        return -1

    def dfs(support, residual, cand):
        depth = len(support)
        for t, (m, v) in enumerate(cand):
            p = pivot(v)
            if p < 0:
                continue
            r = reduce(residual, v, p)
            if not any(r):
                beta = _positive_solution(support + [m], M)
                if beta is not None:
                    found.append(beta)
                continue
            if depth + 1 < M:
                rest = [(m2, reduce(v2, v, p)) for m2, v2 in cand[t + 1:]]
                dfs(support + [m], r, rest)

    dfs([], ones, cols)
    found.sort()
    return tuple(found)


def _positive_solution(support: list[int], M: int) -> tuple[tuple[int, Fraction], ...] | None:
    # support columns are independent and span the all-ones vector, so
    # fraction-free Gauss-Jordan on [A | 1] leaves one pivot row per column
    n = len(support)
    rows = [[(S >> r) & 1 for S in support] + [1] for r in range(M)]
    for c in range(n):
        piv = next(r for r in range(c, M) if rows[r][c])
        rows[c], rows[piv] = rows[piv], rows[c]
        pr = rows[c]
        pc = pr[c]
        for r in range(M):
            if r != c and rows[r][c]:
                f = rows[r][c]
                row = [pc * x - f * y for x, y in zip(rows[r], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                rows[r] = [x // g for x in row] if g > 1 else row
    out = []
    for c in range(n):
        a, b = rows[c][c], rows[c][n]
        if b == 0 or (a > 0) != (b > 0):
            return None
        out.append((support[c], Fraction(b, a)))
    return tuple(out)


def is_fractional_partition(weights: Mapping[int, Fraction], T: int) -> bool:
    try:
        validate_partition(weights, T)
    except InvalidPartition:
        return False
    return True
