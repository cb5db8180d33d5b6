"""Compact subsets of the real line as finite unions of closed rational intervals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .rational import to_rational

Interval = tuple[Fraction, Fraction]


class EmptySetError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalUnion1D:
    """Sorted, pairwise disjoint closed intervals; ``lo == hi`` is a point.

    Build instances with :func:`normalize` (or :meth:`of`) rather than the raw
    constructor so the canonical form holds.
    """

    intervals: tuple[Interval, ...]

    @classmethod
    def of(cls, *pairs) -> "IntervalUnion1D":
        return normalize(pairs)

    @classmethod
    def point(cls, x) -> "IntervalUnion1D":
        x = to_rational(x)
        return cls(((x, x),))

    @property
    def dim(self) -> int:
        return 1

    def is_empty(self) -> bool:
        return not self.intervals

    def is_interval(self) -> bool:
        return len(self.intervals) == 1

    @property
    def min(self) -> Fraction:
        self._nonempty()
        return self.intervals[0][0]

    @property
    def max(self) -> Fraction:
        self._nonempty()
        return self.intervals[-1][1]

    def measure(self) -> Fraction:
        return measure(self)

    def __add__(self, other: "IntervalUnion1D") -> "IntervalUnion1D":
        return minkowski_sum(self, other)

    def __len__(self) -> int:
        return len(self.intervals)

    def translate(self, t) -> "IntervalUnion1D":
        return translate_scale(self, t, 1)

    def contains(self, other: "IntervalUnion1D") -> bool:
        """Exact set inclusion ``other ⊆ self``."""
        js = 0
        mine = self.intervals
        for lo, hi in other.intervals:
            while js < len(mine) and mine[js][1] < lo:
                js += 1
            if js == len(mine) or not (mine[js][0] <= lo and hi <= mine[js][1]):
                return False
        return True

    def _nonempty(self) -> None:
        if not self.intervals:
            raise EmptySetError("empty interval union")

    def __repr__(self) -> str:
        body = ", ".join(f"[{lo}, {hi}]" if lo != hi else f"{{{lo}}}" for lo, hi in self.intervals)
        return f"IntervalUnion1D({body or '∅'})"


EMPTY = IntervalUnion1D(())


def normalize(raw: Iterable[Sequence]) -> IntervalUnion1D:
    """Sort and merge overlapping or touching intervals."""
    pairs = []
    for pair in raw:
        if len(pair) != 2:
            raise ValueError(f"interval must be a pair, got {pair!r}")
        lo, hi = to_rational(pair[0]), to_rational(pair[1])
        if lo > hi:
            raise ValueError(f"malformed interval [{lo}, {hi}]: lo > hi")
        pairs.append((lo, hi))
    return _merge(pairs)


def _merge(pairs: list[Interval]) -> IntervalUnion1D:
    if not pairs:
        return EMPTY
    pairs.sort()
    out = []
    cur_lo, cur_hi = pairs[0]
    for lo, hi in pairs[1:]:
        if lo <= cur_hi:
            if hi > cur_hi:
                cur_hi = hi
        else:
            out.append((cur_lo, cur_hi))
            cur_lo, cur_hi = lo, hi
    out.append((cur_lo, cur_hi))
    return IntervalUnion1D(tuple(out))


def minkowski_sum(A: IntervalUnion1D, B: IntervalUnion1D) -> IntervalUnion1D:
    if A.is_empty() or B.is_empty():
        raise EmptySetError("Minkowski sum needs nonempty operands")
    return _merge([(a0 + b0, a1 + b1) for a0, a1 in A.intervals for b0, b1 in B.intervals])


def measure(A: IntervalUnion1D) -> Fraction:
    return sum((hi - lo for lo, hi in A.intervals), Fraction(0))


def union(sets: Iterable[IntervalUnion1D]) -> IntervalUnion1D:
    return _merge([iv for s in sets for iv in s.intervals])


def translate_scale(A: IntervalUnion1D, t, lam=1) -> IntervalUnion1D:
    """Image of ``A`` under ``x -> lam * x + t``."""
    t, lam = to_rational(t), to_rational(lam)
    if lam <= 0:
        raise ValueError("scale factor must be positive")
    if lam == 1:
        return IntervalUnion1D(tuple((lo + t, hi + t) for lo, hi in A.intervals))
    return IntervalUnion1D(tuple((lam * lo + t, lam * hi + t) for lo, hi in A.intervals))


def truncate(A: IntervalUnion1D, lo, hi) -> IntervalUnion1D:
    """Closed representative of ``A ∩ (lo, hi]``.

    Components meeting the window only at ``lo`` are dropped; everything else
    is clipped to ``[lo, hi]``. The representative differs from the half-open
    set by finitely many points, so measures are exact.
    """
    lo, hi = to_rational(lo), to_rational(hi)
    if lo > hi:
        raise ValueError(f"truncation window ({lo}, {hi}] has lo > hi")
    if lo == hi:
        return EMPTY
    out = []
    for x, y in A.intervals:
        if y <= lo:
            continue
        if x > hi:
            break
        out.append((x if x > lo else lo, y if y < hi else hi))
    return IntervalUnion1D(tuple(out))


def overlap_measure(A: IntervalUnion1D, B: IntervalUnion1D) -> Fraction:
    """Measure of ``A ∩ B`` by a two-pointer sweep."""
    i = j = 0
    total = Fraction(0)
    a, b = A.intervals, B.intervals
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if hi > lo:
            total += hi - lo
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return total


def grid_error_bound(A: IntervalUnion1D, B: IntervalUnion1D, N: int) -> Fraction:
    """Upper bound on ``grid_oracle(A, B, N) - measure(A + B)``.

    The rasterized sets lie within distance ``h`` of the originals, so the
    rasterized sum lies within ``2h`` of ``A + B`` on each side of each of its
    at most ``len(A) * len(B)`` components.
    """
    span = (A.max - A.min) + (B.max - B.min)
    return 4 * span / N * len(A) * len(B)


def grid_oracle(A: IntervalUnion1D, B: IntervalUnion1D, N: int) -> float:
    """Independent estimate of ``|A + B|`` on a grid of step ``span / N``.

    Both sets are replaced by the union of grid cells they touch, the cell
    index sets are added by FFT convolution and the covered cells counted.
    The estimate never undershoots; see :func:`grid_error_bound`.
    """
    if not isinstance(N, int) or N < 1:
        raise ValueError("grid resolution N must be a positive integer")
    if A.is_empty() or B.is_empty():
        raise EmptySetError("grid oracle needs nonempty operands")
    span = (A.max - A.min) + (B.max - B.min)
    if span == 0:
        return 0.0
    h = span / N
    ia = _raster(A, h, N)
    ib = _raster(B, h, N)
    size = len(ia) + len(ib) - 1
    nfft = 1 << (size - 1).bit_length()
    conv = np.fft.irfft(np.fft.rfft(ia, nfft) * np.fft.rfft(ib, nfft), nfft)[:size]
    hit = conv > 0.5
    # cell i + cell j = [(i+j)h, (i+j+2)h]: mark sum cells s and s+1
    covered = np.zeros(size + 1, dtype=bool)
    covered[:-1] |= hit
    covered[1:] |= hit
    return float(h) * int(covered.sum())


def _raster(A: IntervalUnion1D, h: Fraction, N: int) -> np.ndarray:
    origin = A.min
    cells = np.zeros(N + 1, dtype=np.float64)
    for lo, hi in A.intervals:
        first = max(_ceil((lo - origin) / h) - 1, 0)
        last = min(_floor((hi - origin) / h), N)
        cells[first:last + 1] = 1.0
    return cells


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
