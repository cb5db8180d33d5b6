"""Finite unions of axis-aligned rational boxes in R^d.

Boxes may overlap and may be degenerate along any axis; volume is always the
Lebesgue measure of the union.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import to_rational
from .real_sets import EmptySetError

Box = tuple[tuple[Fraction, Fraction], ...]


def make_box(pairs: Iterable[Sequence]) -> Box:
    box = []
    for pair in pairs:
        if len(pair) != 2:
            raise ValueError(f"box axis must be a pair, got {pair!r}")
        lo, hi = to_rational(pair[0]), to_rational(pair[1])
        if lo > hi:
            raise ValueError(f"malformed box axis [{lo}, {hi}]: lo > hi")
        box.append((lo, hi))
    if not box:
        raise ValueError("box needs at least one axis")
    return tuple(box)


def box_volume(b: Box) -> Fraction:
    v = Fraction(1)
    for lo, hi in b:
        v *= hi - lo
    return v


def box_inside(inner: Box, outer: Box) -> bool:
    return all(o0 <= i0 and i1 <= o1 for (i0, i1), (o0, o1) in zip(inner, outer))


@dataclass(frozen=True)
class BoxUnion:
    dim: int
    boxes: tuple[Box, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        for b in self.boxes:
            if len(b) != self.dim:
                raise ValueError(f"box {b!r} does not have dimension {self.dim}")

    @classmethod
    def of(cls, *boxes) -> "BoxUnion":
        bs = tuple(make_box(b) for b in boxes)
        if not bs:
            raise ValueError("dimension of an empty box list is unknown; use BoxUnion(dim, ())")
        return cls(len(bs[0]), bs)

    @classmethod
    def cube(cls, lo, hi, dim: int) -> "BoxUnion":
        lo, hi = to_rational(lo), to_rational(hi)
        return cls(dim, (tuple((lo, hi) for _ in range(dim)),))

    @classmethod
    def points(cls, pts: Iterable[Sequence]) -> "BoxUnion":
        bs = tuple(tuple((to_rational(x), to_rational(x)) for x in p) for p in pts)
        return cls(len(bs[0]), bs)

    def is_empty(self) -> bool:
        return not self.boxes

    def measure(self) -> Fraction:
        return union_volume(self)

    def volume(self) -> Fraction:
        return union_volume(self)

    def __add__(self, other: "BoxUnion") -> "BoxUnion":
        return box_minkowski_sum(self, other)

    def axis_min(self, axis: int = 0) -> Fraction:
        self._nonempty()
        return min(b[axis][0] for b in self.boxes)

    def axis_max(self, axis: int = 0) -> Fraction:
        self._nonempty()
        return max(b[axis][1] for b in self.boxes)

    def translate(self, vec: Sequence) -> "BoxUnion":
        vec = [to_rational(x) for x in vec]
        if len(vec) != self.dim:
            raise ValueError("translation vector has the wrong dimension")
        return BoxUnion(self.dim, tuple(tuple((lo + t, hi + t) for (lo, hi), t in zip(b, vec))
                                        for b in self.boxes))

    def scale(self, factors) -> "BoxUnion":
        """Per-axis positive scaling (one factor or one per axis)."""
        if not isinstance(factors, (list, tuple)):
            factors = [factors] * self.dim
        fs = [to_rational(f) for f in factors]
        if any(f <= 0 for f in fs):
            raise ValueError("scale factors must be positive")
        return BoxUnion(self.dim, tuple(tuple((lo * f, hi * f) for (lo, hi), f in zip(b, fs))
                                        for b in self.boxes))

    def contains_box(self, b: Box) -> bool:
        return any(box_inside(b, o) for o in self.boxes)

    def simplified(self) -> "BoxUnion":
        return BoxUnion(self.dim, _prune(list(self.boxes)))

    def _nonempty(self) -> None:
        if not self.boxes:
            raise EmptySetError("empty box union")


def _prune(boxes: list[Box]) -> tuple[Box, ...]:
    """Drop duplicates and boxes inside another box; the union is unchanged."""
    uniq = sorted(set(boxes), key=lambda b: (-box_volume(b), b))
    kept: list[Box] = []
    for b in uniq:
        if not any(box_inside(b, k) for k in kept):
            kept.append(b)
    kept.sort()
    return tuple(kept)


def box_minkowski_sum(A: BoxUnion, B: BoxUnion) -> BoxUnion:
    """All pairwise box sums, with boxes covered by another box removed."""
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if A.is_empty() or B.is_empty():
        raise EmptySetError("Minkowski sum needs nonempty operands")
    sums = [tuple((a0 + b0, a1 + b1) for (a0, a1), (b0, b1) in zip(ba, bb))
            for ba in A.boxes for bb in B.boxes]
    return BoxUnion(A.dim, _prune(sums))


def union_volume(A: BoxUnion) -> Fraction:
    """Exact volume of the union by recursive coordinate compression.

    Axis 0 is cut at every box endpoint; on each elementary slab the boxes
    spanning it are handed to the same routine on the remaining axes.
    """
    boxes = [b for b in A.boxes if all(hi > lo for lo, hi in b)]
    if not boxes:
        return Fraction(0)
    return _volume(boxes, 0, A.dim)


def _volume(boxes: list[Box], axis: int, dim: int) -> Fraction:
    if axis == dim - 1:
        ivs = sorted(b[axis] for b in boxes)
        total = Fraction(0)
        cur_lo, cur_hi = ivs[0]
        for lo, hi in ivs[1:]:
            if lo <= cur_hi:
                if hi > cur_hi:
                    cur_hi = hi
            else:
                total += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
        return total + (cur_hi - cur_lo)
    cuts = sorted({x for b in boxes for x in b[axis]})
    total = Fraction(0)
    prev_active: list[Box] | None = None
    prev_measure = Fraction(0)
    for c0, c1 in zip(cuts, cuts[1:]):
        active = [b for b in boxes if b[axis][0] <= c0 and c1 <= b[axis][1]]
        if not active:
            prev_active = None
            continue
        if active != prev_active:
            prev_measure = _volume(active, axis + 1, dim)
            prev_active = active
        total += (c1 - c0) * prev_measure
    return total


def slab_truncate(A: BoxUnion, t1, t2, axis: int = 0) -> BoxUnion:
    """Closed representative of ``A ∩ {x : t1 < x_axis <= t2}``.

    Boxes meeting the slab only on the hyperplane ``x_axis = t1`` are dropped,
    mirroring :func:`lyusternik.real_sets.truncate`.
    """
    t1, t2 = to_rational(t1), to_rational(t2)
    if t1 > t2:
        raise ValueError(f"slab ({t1}, {t2}] has t1 > t2")
    if t1 == t2:
        return BoxUnion(A.dim, ())
    out = []
    for b in A.boxes:
        lo, hi = b[axis]
        if hi <= t1 or lo > t2:
            continue
        clipped = list(b)
        clipped[axis] = (lo if lo > t1 else t1, hi if hi < t2 else t2)
        out.append(tuple(clipped))
    return BoxUnion(A.dim, tuple(out))


def union(sets: Iterable[BoxUnion]) -> BoxUnion:
    sets = list(sets)
    return BoxUnion(sets[0].dim, tuple(b for s in sets for b in s.boxes))
