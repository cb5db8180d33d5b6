"""Convex polygons with exact rational vertices.

Canonical form: counterclockwise, no three consecutive collinear vertices,
starting at the lowest vertex (smallest y, then smallest x). Segments keep two
vertices and points one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import to_rational
from .real_sets import EmptySetError

Point = tuple[Fraction, Fraction]


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence]) -> tuple[Point, ...]:
    """Andrew's monotone chain, collinear points removed, canonical start."""
    pts = sorted({(to_rational(p[0]), to_rational(p[1])) for p in points})
    if len(pts) <= 2:
        return _canonical_start(tuple(pts))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return _canonical_start(tuple(hull))


def _canonical_start(vs: tuple[Point, ...]) -> tuple[Point, ...]:
    if not vs:
        return vs
    k = min(range(len(vs)), key=lambda i: (vs[i][1], vs[i][0]))
    return vs[k:] + vs[:k]


def _drop_collinear(vs: list[Point]) -> list[Point]:
    """Remove vertices interior to an edge of a polygon with positive area."""
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        n = len(vs)
        for i in range(n):
            if cross(vs[i - 1], vs[i], vs[(i + 1) % n]) == 0:
                del vs[i]
                changed = True
                break
    return vs


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[Point, ...]

    @classmethod
    def hull_of(cls, points: Iterable[Sequence]) -> "ConvexPolygon":
        return cls(convex_hull(points))

    @classmethod
    def from_vertices(cls, vertices: Iterable[Sequence]) -> "ConvexPolygon":
        """Accept a convex vertex list in either orientation; reject non-convex input."""
        vs = [(to_rational(p[0]), to_rational(p[1])) for p in vertices]
        if not vs:
            raise EmptySetError("polygon needs at least one vertex")
        hull = convex_hull(vs)
        if len(hull) >= 3 and not all(_on_boundary(p, hull) for p in vs):
            raise ValueError("vertices do not describe a convex polygon")
        return cls(hull)

    @classmethod
    def box(cls, x0, x1, y0, y1) -> "ConvexPolygon":
        return cls.hull_of([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    @property
    def dim(self) -> int:
        return 2

    def measure(self) -> Fraction:
        return area(self)

    def __add__(self, other: "ConvexPolygon") -> "ConvexPolygon":
        return polygon_minkowski_sum(self, other)

    def translate(self, v: Sequence) -> "ConvexPolygon":
        dx, dy = to_rational(v[0]), to_rational(v[1])
        return ConvexPolygon(tuple((x + dx, y + dy) for x, y in self.vertices))


def _on_boundary(p: Point, hull: tuple[Point, ...]) -> bool:
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    return False


def _half(v: Point) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _edges(vs: tuple[Point, ...]) -> list[Point]:
    n = len(vs)
    if n == 1:
        return []
    return [(vs[(i + 1) % n][0] - vs[i][0], vs[(i + 1) % n][1] - vs[i][1]) for i in range(n)]


def polygon_minkowski_sum(P: ConvexPolygon, Q: ConvexPolygon) -> ConvexPolygon:
    """Merge the edge sequences of ``P`` and ``Q`` by polar angle.

    Both edge lists start at the lowest vertex, so they are already sorted by
    angle in ``[0, 2*pi)``; comparisons use half-planes and cross products.
    """
    if not P.vertices or not Q.vertices:
        raise EmptySetError("Minkowski sum needs nonempty operands")
    ep, eq = _edges(P.vertices), _edges(Q.vertices)
    cur = (P.vertices[0][0] + Q.vertices[0][0], P.vertices[0][1] + Q.vertices[0][1])
    out = [cur]
    i = j = 0
    while i < len(ep) or j < len(eq):
        if j == len(eq):
            take_p = True
        elif i == len(ep):
            take_p = False
        else:
            u, v = ep[i], eq[j]
            hu, hv = _half(u), _half(v)
            take_p = hu < hv or (hu == hv and u[0] * v[1] - u[1] * v[0] >= 0)
        if take_p:
            e = ep[i]
            i += 1
        else:
            e = eq[j]
            j += 1
        cur = (cur[0] + e[0], cur[1] + e[1])
        out.append(cur)
    if len(out) == 1:
        return ConvexPolygon((cur,))
    out.pop()  # back at the start vertex
    if len(out) >= 3 and any(cross(out[0], out[1], p) != 0 for p in out[2:]):
        return ConvexPolygon(_canonical_start(tuple(_drop_collinear(out))))
    # all sums collinear: a segment or a point, kept as its two extremes
    ends = sorted(set(out))
    return ConvexPolygon(_canonical_start(tuple({ends[0]: 0, ends[-1]: 0})))


def area(P: ConvexPolygon) -> Fraction:
    vs = P.vertices
    n = len(vs)
    if n < 3:
        return Fraction(0)
    s = sum(vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1] for i in range(n))
    return abs(s) / 2
