"""Constructive certificates for fractional superadditivity of volume.

Given summands ``A_1..A_M`` (each translated so that it contains the origin as
a lowest point and ``a_i`` as a highest point along the sweep direction) and a
regular q-cover ``S_1..S_s``, layer ``k`` places, for every ``j``, the set

    (sum_{S_j} A + sum_{P \\ S_j} a)  ∩  (sum_P a, sum_Q a]

with ``P = h_k^{-1}([1, j-1])`` and ``Q = h_k^{-1}([1, j])``. The pieces of one
layer sit in disjoint windows inside the full sum, and for each ``j`` the q
pieces re-assemble ``sum_{S_j} A`` after undoing the translations, which gives

    q |sum_[M] A|  >=  sum_j |sum_{S_j} A|.

For integer sets the windows avoid 0, improving both sides by one per term.
Sets in d dimensions use slabs along one coordinate axis instead of windows.

Building a certificate and checking it are separate steps: :func:`verify`
re-derives everything it needs from the stored summands and cover.
"""
from __future__ import annotations

from collections.abc import Sequence as SequenceABC
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from . import boxes as bx
from . import real_sets as rs
from .boxes import BoxUnion
from .integer_sets import IntegerSet, common_increment
from .partitions import (
    CoverFunctions,
    FractionalPartition,
    RegularCover,
    cover_functions,
    to_regular_cover,
)
from .rational import full_mask, members
from .real_sets import EmptySetError, IntervalUnion1D

SetLike = Union[IntervalUnion1D, IntegerSet, BoxUnion]


class VerificationError(RuntimeError):
    """A certificate failed one of its checks; never expected on valid input."""

    def __init__(self, failures: list[str]):
        super().__init__("; ".join(failures[:5]) + (" ..." if len(failures) > 5 else ""))
        self.failures = failures


@dataclass(frozen=True)
class PieceDescriptor:
    k: int
    j: int
    translator: int
    window: tuple[Fraction, Fraction]
    shift: object  # Fraction, int, or a tuple of Fractions for boxes
    piece: SetLike


@dataclass
class Certificate:
    kind: str  # "1d" | "int" | "boxes"
    cover: RegularCover
    sets: tuple  # normalized summands
    offsets: tuple  # translation applied to each input summand
    extremes: tuple  # a_i: scalar, or a point of A_i for boxes
    pieces: Sequence[PieceDescriptor]
    sumset_measures: list[Fraction]  # |sum_{S_j} A| (integer: minus one)
    recollected: list[Fraction]  # sum over k of the piece measures for each j
    total_measure: Fraction  # |sum A| (integer: minus one)
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    equality_condition_met: bool | None
    axis: int = 0
    layer_totals: list[Fraction] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.cover.q

    @property
    def verdict(self) -> bool:
        return self.slack >= 0

    def fractional_sides(self) -> tuple[Fraction, Fraction]:
        """Both sides divided by q: the inequality for the fractional partition."""
        return self.lhs / self.q, self.rhs / self.q


# -- normalization -----------------------------------------------------------

def normalize_tuple(A: Sequence[SetLike], axis: int = 0):
    """Translate every summand so that its lowest point is the origin.

    Returns ``(translated, offsets, extremes)``. For intervals and integers the
    extreme is ``max A_i`` after translation. For boxes the origin is a point
    of ``A_i`` minimizing coordinate ``axis`` and the extreme is a point of
    ``A_i`` maximizing it, returned as a coordinate tuple.
    """
    if not A:
        raise ValueError("empty tuple of summands")
    out, offsets, extremes = [], [], []
    for X in A:
        if X.is_empty():
            raise EmptySetError("every summand must be nonempty")
        if isinstance(X, IntervalUnion1D):
            t = -X.min
            Y = rs.translate_scale(X, t, 1)
            out.append(Y)
            offsets.append(t)
            extremes.append(Y.max)
        elif isinstance(X, IntegerSet):
            t = -X.min
            Y = X.translate(t)
            out.append(Y)
            offsets.append(t)
            extremes.append(Y.max)
        elif isinstance(X, BoxUnion):
            low = min(X.boxes, key=lambda b: (b[axis][0], b))
            origin = tuple(lo for lo, _ in low)
            t = tuple(-c for c in origin)
            Y = X.translate(t)
            high = max(Y.boxes, key=lambda b: (b[axis][1], tuple(-lo for lo, _ in b)))
            a = tuple(hi if ax == axis else lo for ax, (lo, hi) in enumerate(high))
            out.append(Y)
            offsets.append(t)
            extremes.append(a)
        else:
            raise TypeError(f"unsupported summand type {type(X).__name__}")
    kinds = {type(X) for X in out}
    if len(kinds) > 1:
        raise ValueError("summands of mixed kinds")
    if isinstance(out[0], BoxUnion) and len({X.dim for X in out}) > 1:
        raise ValueError("summands of mixed dimensions")
    return tuple(out), tuple(offsets), tuple(extremes)


# -- per-kind primitives -----------------------------------------------------

class _Ops:
    def __init__(self, kind: str, axis: int = 0, dim: int = 1):
        self.kind = kind
        self.axis = axis
        self.dim = dim
        self.corr = 1 if kind == "int" else 0

    def zero(self):
        if self.kind == "boxes":
            return (Fraction(0),) * self.dim
        return 0

    def add_point(self, t, a):
        if self.kind == "boxes":
            return tuple(x + y for x, y in zip(t, a))
        return t + a

    def coord(self, a):
        return a[self.axis] if self.kind == "boxes" else a

    def translate(self, X, t):
        if self.kind == "1d":
            # plain addition keeps integer-scaled endpoints as ints
            return IntervalUnion1D(tuple((x + t, y + t) for x, y in X.intervals))
        return X.translate(t)

    def window_cut(self, X, lo, hi):
        if self.kind == "1d":
            if lo >= hi:
                return rs.EMPTY
            out = []
            for x, y in X.intervals:
                if y <= lo:
                    continue
                if x > hi:
                    break
                out.append((x if x > lo else lo, y if y < hi else hi))
            return IntervalUnion1D(tuple(out))
        if self.kind == "int":
            return X.truncate(lo, hi)
        return bx.slab_truncate(X, lo, hi, self.axis)

    def measure(self, X):
        """Exact measure; ints stay ints so integer-scaled work avoids Fractions."""
        if self.kind == "int":
            return len(X.elements)
        if self.kind == "1d":
            return sum(y - x for x, y in X.intervals)
        return X.measure()

    def subset(self, small, big) -> bool:
        if self.kind == "1d":
            return big.contains(small)
        if self.kind == "int":
            return set(small.elements) <= set(big.elements)
        return all(big.contains_box(b) for b in small.boxes)

    def in_window(self, X, lo, hi) -> bool:
        if self.kind == "1d":
            return all(lo <= x and y <= hi for x, y in X.intervals)
        if self.kind == "int":
            return all(lo < x <= hi for x in X.elements)
        return all(lo <= b[self.axis][0] and b[self.axis][1] <= hi for b in X.boxes)

    def layer_overlap(self, pieces, total):
        """``sum |piece| - |union|``: zero iff the pieces are a.e. disjoint."""
        pieces = [p for p in pieces if not p.is_empty()]
        if len(pieces) < 2:
            return 0
        if self.kind == "1d":
            return total - self.measure(rs.union(pieces))
        if self.kind == "int":
            return total - len({x for p in pieces for x in p.elements})
        return total - bx.union(pieces).measure()


def subset_sums(sets: Sequence[SetLike]) -> dict[int, SetLike]:
    """Every nonempty subset sum, each built from a smaller one plus one summand."""
    M = len(sets)
    out: dict[int, SetLike] = {}
    for S in range(1, 1 << M):
        top = S.bit_length()
        rest = S & ~(1 << (top - 1))
        out[S] = sets[top - 1] if rest == 0 else out[rest] + sets[top - 1]
    return out


class SumTable:
    """Subset sums of a normalized tuple, with their measures and the point
    sums ``sum_{i in S} a_i`` cached by mask. Build once and pass it to the
    certify functions to reuse the work across many partitions."""

    def __init__(self, sets: Sequence[SetLike], extremes: Sequence, axis: int = 0):
        self.sets = tuple(sets)
        self.extremes = tuple(extremes)
        kind = _kind_of(self.sets[0])
        dim = self.sets[0].dim if kind == "boxes" else 1
        if kind == "boxes" and not 0 <= axis < dim:
            raise ValueError(f"axis must be in 0..{dim - 1}")
        self.ops = _Ops(kind, axis, dim)
        self.sums = subset_sums(self.sets)
        M = len(self.sets)
        self.shift = [self.ops.zero()] * (1 << M)
        for S in range(1, 1 << M):
            top = S.bit_length()
            self.shift[S] = self.ops.add_point(self.shift[S & ~(1 << (top - 1))], self.extremes[top - 1])
        self.coord = [self.ops.coord(t) for t in self.shift]
        self._measure: dict[int, Fraction] = {}
        self.source = None  # the raw tuple, when built by ``of``
        self.normalized = None
        self.scale = 1

    @classmethod
    def of(cls, A: Sequence[SetLike], axis: int = 0) -> "SumTable":
        """Table for ``certify_*(A, ...)``; 1-D tuples are scaled to integers."""
        A = tuple(A)
        sets, offsets, extremes = normalize_tuple(A, axis)
        norm = (sets, offsets, extremes)
        if _kind_of(sets[0]) == "1d":
            scale = _common_denominator(sets)
            sets, extremes = _scaled(sets, extremes, scale)
        else:
            scale = 1
        T = cls(sets, extremes, axis)
        T.source, T.normalized, T.scale = A, norm, scale
        return T

    @property
    def kind(self) -> str:
        return self.ops.kind

    @property
    def M(self) -> int:
        return len(self.sets)

    def measure(self, S: int):
        m = self._measure.get(S)
        if m is None:
            m = self._measure[S] = self.ops.measure(self.sums[S])
        return m


def _kind_of(X) -> str:
    if isinstance(X, IntervalUnion1D):
        return "1d"
    if isinstance(X, IntegerSet):
        return "int"
    if isinstance(X, BoxUnion):
        return "boxes"
    raise TypeError(f"unsupported summand type {type(X).__name__}")


def _as_cover(P, M: int) -> RegularCover:
    if isinstance(P, RegularCover):
        C = P
    elif isinstance(P, FractionalPartition):
        C = to_regular_cover(P)
    else:
        raise TypeError("expected a FractionalPartition or a RegularCover")
    if C.ground != full_mask(M):
        raise ValueError(f"the cover must be of the full index set [1..{M}]")
    return C


# -- construction --------------------------------------------------------------

def _layer(T: SumTable, C: RegularCover, H: CoverFunctions, k: int) -> list[PieceDescriptor]:
    if not 1 <= k <= C.q:
        raise ValueError(f"layer must be in 1..{C.q}, got {k}")
    ops = T.ops
    out = []
    prev = 0
    for j, S in enumerate(C.sets, start=1):
        cur = H.preimage(k, j)
        lo, hi = T.coord[prev], T.coord[cur]
        translator = prev & ~S
        shift = T.shift[translator]
        if cur == prev:
            piece = ops.window_cut(T.sums[S], lo, lo)
        else:
            piece = ops.window_cut(ops.translate(T.sums[S], shift), lo, hi)
        out.append(PieceDescriptor(k, j, translator, (lo, hi), shift, piece))
        prev = cur
    return out


def pieces_1d(A: Sequence[IntervalUnion1D], C, k: int) -> list[PieceDescriptor]:
    """Layer ``k`` of the decomposition of 1-D summands (normalized first)."""
    sets, _, extremes = normalize_tuple(A)
    T = SumTable(sets, extremes)
    C = _as_cover(C, T.M)
    return _layer(T, C, cover_functions(C), k)


def pieces_int(A: Sequence[IntegerSet], C, k: int) -> list[PieceDescriptor]:
    T = SumTable.of(A)
    C = _as_cover(C, T.M)
    return _layer(T, C, cover_functions(C), k)


def pieces_boxes(A: Sequence[BoxUnion], C, k: int, axis: int = 0) -> list[PieceDescriptor]:
    T = SumTable.of(A, axis)
    C = _as_cover(C, T.M)
    return _layer(T, C, cover_functions(C), k)


def _certify(A, P, kind: str, axis: int = 0, table: SumTable | None = None) -> Certificate:
    A = tuple(A)
    if table is None:
        table = SumTable.of(A, axis)
    elif table.source != A or table.ops.axis != axis:
        raise ValueError("sum table was built for a different tuple; use SumTable.of")
    if table.kind != kind:
        raise TypeError(f"expected {kind} summands, got {type(A[0]).__name__}")
    # 1-D work happens on an integer copy scaled by ``table.scale``
    sets, offsets, extremes = table.normalized
    work_sets, work_ext, scale = table.sets, table.extremes, table.scale
    M = len(sets)
    C = _as_cover(P, M)
    H = cover_functions(C)
    pieces: list[PieceDescriptor] = []
    for k in range(1, C.q + 1):
        pieces.extend(_layer(table, C, H, k))

    ops = table.ops
    total_measure = table.measure(full_mask(M)) - ops.corr
    sumset_measures = [table.measure(S) - ops.corr for S in C.sets]
    recollected = [0] * C.s
    layer_totals = [0] * C.q
    for p in pieces:
        m = ops.measure(p.piece)
        recollected[p.j - 1] += m
        layer_totals[p.k - 1] += m
    lhs = C.q * Fraction(total_measure)
    rhs = Fraction(sum(sumset_measures))

    distinct = sorted(set(C.sets))
    if kind == "1d":
        eq = all(table.sums[S].is_interval() for S in distinct)
    elif kind == "int":
        eq = common_increment(table.sums[S] for S in distinct) is not None
    else:
        eq = None

    cert = Certificate(kind, C, work_sets, offsets, work_ext, pieces, list(map(Fraction, sumset_measures)),
                       list(map(Fraction, recollected)), Fraction(total_measure), lhs, rhs, lhs - rhs, eq, axis, list(map(Fraction, layer_totals)))
    failures = verify(cert, table)
    if failures:
        raise VerificationError(failures)
    if kind == "1d":
        cert = _unscale(cert, sets, extremes, scale)
    return cert


class _ScaledPieces(SequenceABC):
    """Pieces of an integer-scaled certificate, converted back on first access."""

    def __init__(self, raw: list[PieceDescriptor], L: int):
        self._raw = raw
        self._L = L
        self._done: dict[int, PieceDescriptor] = {}

    def __len__(self) -> int:
        return len(self._raw)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self._raw)
        p = self._done.get(i)
        if p is None:
            p = self._done[i] = _unscale_piece(self._raw[i], self._L)
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, SequenceABC) and list(self) == list(other)

    def __repr__(self) -> str:
        return repr(list(self))


def _unscale_piece(p: PieceDescriptor, L: int) -> PieceDescriptor:
    def down(x):
        return Fraction(x, L)
    return PieceDescriptor(p.k, p.j, p.translator, (down(p.window[0]), down(p.window[1])), down(p.shift),
                           IntervalUnion1D(tuple((down(a), down(b)) for a, b in p.piece.intervals)))


def _common_denominator(sets: Sequence[IntervalUnion1D]) -> int:
    L = 1
    for X in sets:
        for lo, hi in X.intervals:
            L = lcm(L, Fraction(lo).denominator, Fraction(hi).denominator)
    return L


def _scaled(sets, extremes, L: int):
    def up(x):
        x = Fraction(x)
        return x.numerator * (L // x.denominator)
    S = tuple(IntervalUnion1D(tuple((up(lo), up(hi)) for lo, hi in X.intervals)) for X in sets)
    return S, tuple(up(a) for a in extremes)


def _unscale(cert: Certificate, sets, extremes, L: int) -> Certificate:
    """Map a certificate for the tuple scaled by ``L`` back to original units.

    Scaling by ``L > 0`` maps windows, pieces and translations to their
    counterparts and multiplies every measure by ``L``, so validity is kept.
    """
    def down(x):
        return Fraction(x, L) if isinstance(x, int) else Fraction(x) / L

    return Certificate(cert.kind, cert.cover, sets, cert.offsets, extremes, _ScaledPieces(cert.pieces, L),
                       [down(m) for m in cert.sumset_measures], [down(m) for m in cert.recollected],
                       down(cert.total_measure), down(cert.lhs), down(cert.rhs), down(cert.slack),
                       cert.equality_condition_met, cert.axis, [down(m) for m in cert.layer_totals])


def certify_1d(A: Sequence[IntervalUnion1D], P, table: SumTable | None = None) -> Certificate:
    """Certificate for ``q |sum A| >= sum_j |sum_{S_j} A|`` with 1-D summands.

    ``P`` is a fractional partition (expanded with :func:`to_regular_cover`)
    or an explicitly ordered regular cover. ``equality_condition_met`` reports
    whether every subset sum in the cover is a single interval, which forces
    zero slack.
    """
    return _certify(A, P, "1d", table=table)


def certify_int(A: Sequence[IntegerSet], P, table: SumTable | None = None) -> Certificate:
    """Integer version: ``q (|sum A| - 1) >= sum_j (|sum_{S_j} A| - 1)``.

    Equality is reported when all subset sums in the cover are arithmetic
    progressions with one common increment.
    """
    return _certify(A, P, "int", table=table)


def certify_boxes(A: Sequence[BoxUnion], P, axis: int = 0, table: SumTable | None = None) -> Certificate:
    """d-dimensional version with slabs along coordinate ``axis`` (0-based)."""
    return _certify(A, P, "boxes", axis=axis, table=table)


# -- verification ------------------------------------------------------------

def verify(cert: Certificate, table: SumTable | None = None) -> list[str]:
    """Re-check a certificate from its stored summands, cover and pieces.

    Returns the list of failed checks (empty when the certificate is valid).
    Pieces are not recomputed: the stored ones must lie in the full sum and in
    their translated subset sum, stay inside their windows, be a.e. disjoint
    within each layer and re-assemble every subset sum exactly.
    """
    fails: list[str] = []
    C = cert.cover
    M = len(cert.sets)
    kinds = {_kind_of(X) for X in cert.sets}
    if kinds != {cert.kind}:
        return [f"summands are not all of kind {cert.kind}"]
    dim = cert.sets[0].dim if cert.kind == "boxes" else 1
    if cert.kind == "boxes" and not 0 <= cert.axis < dim:
        return ["axis out of range"]
    ops = _Ops(cert.kind, cert.axis, dim)

    for i, (X, a) in enumerate(zip(cert.sets, cert.extremes), start=1):
        if cert.kind == "boxes":
            origin = tuple((Fraction(0), Fraction(0)) for _ in range(dim))
            if len(a) != dim or X.axis_min(cert.axis) != 0 or not X.contains_box(origin):
                fails.append(f"summand {i} is not normalized at the origin")
            elif not X.contains_box(tuple((c, c) for c in a)) or X.axis_max(cert.axis) != a[cert.axis]:
                fails.append(f"extreme point of summand {i} is not a highest point")
        elif X.is_empty() or X.min != 0 or X.max != a:
            fails.append(f"summand {i} is not normalized to [0, a_{i}]")
    if fails:
        return fails
    if C.ground != full_mask(M):
        return ["cover is not of the full index set"]
    if table is None:
        table = SumTable(cert.sets, cert.extremes, cert.axis)
    elif table.sets != tuple(cert.sets) or table.extremes != tuple(cert.extremes):
        return ["sum table does not belong to this certificate"]
    total = table.sums[full_mask(M)]
    H = cover_functions(C)

    expected: dict[tuple[int, int], tuple] = {}
    for k in range(1, C.q + 1):
        prev = 0
        for j, S in enumerate(C.sets, start=1):
            cur = H.preimage(k, j)
            if prev & ~cur:
                fails.append(f"layer {k}: preimages are not nested at {j}")
            window = (table.coord[prev], table.coord[cur])
            if window[1] < window[0]:
                fails.append(f"layer {k}: window {j} decreases")
            expected[(k, j)] = (prev & ~S, window)
            prev = cur

    collect = [0] * C.s
    by_layer: dict[int, list] = {k: [] for k in range(1, C.q + 1)}
    layer_sum = [0] * (C.q + 1)
    seen = set()
    for p in cert.pieces:
        key = (p.k, p.j)
        if key not in expected:
            fails.append(f"piece {key} is outside the cover")
            continue
        if key in seen:
            fails.append(f"duplicate piece {key}")
        seen.add(key)
        translator, window = expected[key]
        if p.translator != translator:
            fails.append(f"piece {key}: translator {members(p.translator)} should be {members(translator)}")
        if tuple(p.window) != window:
            fails.append(f"piece {key}: window {p.window} should be {window}")
        if p.shift != table.shift[translator]:
            fails.append(f"piece {key}: wrong translation")
        if _kind_of(p.piece) != cert.kind:
            fails.append(f"piece {key} has the wrong kind")
            continue
        if p.piece.is_empty():
            continue
        lo, hi = window
        if not ops.in_window(p.piece, lo, hi):
            fails.append(f"piece {key} leaves its window")
        if not ops.subset(p.piece, total):
            fails.append(f"piece {key} is not inside the full sum")
        if not ops.subset(ops.translate(p.piece, _neg(p.shift)), table.sums[C.sets[p.j - 1]]):
            fails.append(f"piece {key} is not inside its translated subset sum")
        if cert.kind == "int" and 0 in p.piece.elements:
            fails.append(f"piece {key} contains 0")
        m = ops.measure(p.piece)
        collect[p.j - 1] += m
        layer_sum[p.k] += m
        by_layer[p.k].append(p.piece)
    if len(seen) != len(expected):
        fails.append("certificate is missing pieces")

    total_measure = table.measure(full_mask(M)) - ops.corr
    for k, ps in by_layer.items():
        gap = ops.layer_overlap(ps, layer_sum[k])
        if gap != 0:
            fails.append(f"layer {k}: pieces overlap in measure {gap}")
        if layer_sum[k] > total_measure:
            fails.append(f"layer {k}: pieces exceed the full sum")

    rhs = 0
    for j, S in enumerate(C.sets, start=1):
        target = table.measure(S) - ops.corr
        rhs += target
        if collect[j - 1] != target:
            fails.append(f"set {j}: pieces re-assemble {collect[j - 1]}, expected {target}")
        # the windows shifted back must tile (0, sum_{S_j} a]
        spans = []
        for k in range(1, C.q + 1):
            translator, (lo, hi) = expected[(k, j)]
            off = table.coord[translator]
            if hi > lo:
                spans.append((lo - off, hi - off))
        spans.sort()
        edge = 0
        for a, b in spans:
            if a != edge:
                fails.append(f"set {j}: shifted windows do not tile (0, {table.coord[S]}]")
                break
            edge = b
        else:
            if edge != table.coord[S]:
                fails.append(f"set {j}: shifted windows end at {edge}, expected {table.coord[S]}")

    lhs = C.q * Fraction(total_measure)
    if Fraction(cert.total_measure) != total_measure:
        fails.append("stored total measure is wrong")
    if list(map(Fraction, cert.sumset_measures)) != [table.measure(S) - ops.corr for S in C.sets]:
        fails.append("stored subset-sum measures are wrong")
    if list(cert.recollected) != collect:
        fails.append("stored recollected measures are wrong")
    if cert.lhs != lhs or cert.rhs != rhs or cert.slack != lhs - rhs:
        fails.append("stored totals do not match")
    if lhs < rhs:
        fails.append(f"inequality fails: {lhs} < {rhs}")
    if cert.equality_condition_met and lhs != rhs:
        fails.append("equality condition met but slack is nonzero")
    return fails


def _neg(t):
    return tuple(-x for x in t) if isinstance(t, tuple) else -t


def verify_certificate(cert: Certificate) -> bool:
    """Raise :class:`VerificationError` on any failed check, else return True."""
    failures = verify(cert)
    if failures:
        raise VerificationError(failures)
    return True
