"""JSON encoding of sets, partitions, set functions and certificates.

Rationals are written as "p/q" strings ("p" for integers). Parsers are
strict: unknown or missing fields raise :class:`FormatError`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .boxes import BoxUnion
from .decomposition import Certificate, PieceDescriptor
from .games import SetFunction
from .integer_sets import IntegerSet
from .partitions import FractionalPartition, RegularCover, validate_partition
from .polygons import ConvexPolygon
from .rational import (
    RationalFormatError,
    check_ground,
    fmt,
    full_mask,
    mask_key,
    mask_of,
    members,
    parse_mask_key,
    to_rational,
)
from .real_sets import IntervalUnion1D, normalize


class FormatError(ValueError):
    pass


def _fields(obj: Any, required: set[str], optional: set[str] = frozenset(), what: str = "object") -> dict:
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = required - obj.keys()
    if missing:
        raise FormatError(f"{what} is missing field(s) {sorted(missing)}")
    extra = obj.keys() - required - set(optional)
    if extra:
        raise FormatError(f"{what} has unknown field(s) {sorted(extra)}")
    return obj


def _rat(x) -> Fraction:
    try:
        return to_rational(x)
    except (RationalFormatError, TypeError, ValueError) as e:
        raise FormatError(str(e)) from None


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _pair(p, what: str) -> tuple[Fraction, Fraction]:
    if not isinstance(p, list) or len(p) != 2:
        raise FormatError(f"{what} must be a pair [lo, hi]")
    return _rat(p[0]), _rat(p[1])


# -- sets ----------------------------------------------------------------------

def set_to_json(X) -> dict:
    if isinstance(X, IntervalUnion1D):
        return {"dim": 1, "intervals": [[fmt(lo), fmt(hi)] for lo, hi in X.intervals]}
    if isinstance(X, IntegerSet):
        return {"dim": 0, "integers": list(X.elements)}
    if isinstance(X, BoxUnion):
        return {"dim": X.dim, "boxes": [[[fmt(lo), fmt(hi)] for lo, hi in b] for b in X.boxes]}
    if isinstance(X, ConvexPolygon):
        return {"dim": 2, "polygon": [[fmt(x), fmt(y)] for x, y in X.vertices]}
    raise TypeError(f"cannot serialize {type(X).__name__}")


def set_from_json(obj) -> Any:
    if not isinstance(obj, dict):
        raise FormatError("a set must be a JSON object")
    if "intervals" in obj:
        _fields(obj, {"intervals"}, {"dim"}, "interval union")
        if obj.get("dim", 1) != 1:
            raise FormatError("interval unions have dim 1")
        if not isinstance(obj["intervals"], list):
            raise FormatError("intervals must be a list")
        try:
            return normalize([_pair(p, "interval") for p in obj["intervals"]])
        except ValueError as e:
            raise FormatError(str(e)) from None
    if "integers" in obj:
        _fields(obj, {"integers"}, {"dim"}, "integer set")
        if obj.get("dim", 0) != 0:
            raise FormatError("integer sets have dim 0")
        if not isinstance(obj["integers"], list):
            raise FormatError("integers must be a list")
        return IntegerSet.of([_int(x, "element") for x in obj["integers"]])
    if "boxes" in obj:
        _fields(obj, {"dim", "boxes"}, set(), "box union")
        d = _int(obj["dim"], "dim")
        if d < 1 or not isinstance(obj["boxes"], list):
            raise FormatError("box union needs dim >= 1 and a list of boxes")
        boxes = []
        for b in obj["boxes"]:
            if not isinstance(b, list) or len(b) != d:
                raise FormatError(f"each box needs {d} [lo, hi] pairs")
            boxes.append([_pair(p, "box side") for p in b])
        try:
            return BoxUnion(d, ()) if not boxes else BoxUnion.of(*boxes)
        except ValueError as e:
            raise FormatError(str(e)) from None
    if "polygon" in obj:
        _fields(obj, {"polygon"}, {"dim"}, "polygon")
        if obj.get("dim", 2) != 2:
            raise FormatError("polygons have dim 2")
        pts = obj["polygon"]
        if not isinstance(pts, list) or not all(isinstance(p, list) and len(p) == 2 for p in pts):
            raise FormatError("polygon must be a list of [x, y] vertices")
        try:
            return ConvexPolygon.from_vertices([(_rat(x), _rat(y)) for x, y in pts])
        except ValueError as e:
            raise FormatError(str(e)) from None
    raise FormatError("a set needs one of the fields intervals, integers, boxes, polygon")


def sets_from_json(obj) -> list:
    """A list of sets, either bare or as ``{"sets": [...]}``."""
    if isinstance(obj, dict):
        obj = _fields(obj, {"sets"}, set(), "set list")["sets"]
    if not isinstance(obj, list) or not obj:
        raise FormatError("expected a nonempty list of sets")
    return [set_from_json(x) for x in obj]


def sets_to_json(sets: Sequence) -> dict:
    return {"sets": [set_to_json(X) for X in sets]}


def factors_from_json(obj) -> list[list]:
    """``{"factors": [[set, set, ...], ...]}``: one row of factors per summand."""
    rows = _fields(obj, {"factors"}, set(), "factor table")["factors"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError("factors must be a nonempty list of lists")
    return [[set_from_json(x) for x in r] for r in rows]


# -- masks, partitions, covers -------------------------------------------------

def _mask_list(idx, M: int | None, what: str) -> int:
    if not isinstance(idx, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
        raise FormatError(f"{what} must be a list of indices")
    if M is not None and any(not 1 <= i <= M for i in idx):
        raise FormatError(f"{what} has an index outside [1..{M}]")
    if len(set(idx)) != len(idx):
        raise FormatError(f"{what} repeats an index")
    try:
        return mask_of(idx)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _key(k: str, M: int) -> int:
    try:
        S = parse_mask_key(k)
    except ValueError as e:
        raise FormatError(str(e)) from None
    if S & ~full_mask(M):
        raise FormatError(f"subset {k} is outside [1..{M}]")
    return S


def partition_to_json(P: FractionalPartition) -> dict:
    return {"M": P.M, "ground": members(P.ground),
            "weights": {mask_key(S): fmt(w) for S, w in P.items()}}


def partition_from_json(obj) -> FractionalPartition:
    _fields(obj, {"M", "weights"}, {"ground"}, "partition")
    M = _int(obj["M"], "M")
    try:
        check_ground(M)
    except ValueError as e:
        raise FormatError(str(e)) from None
    T = _mask_list(obj["ground"], M, "ground") if "ground" in obj else full_mask(M)
    if not isinstance(obj["weights"], dict):
        raise FormatError("weights must be an object keyed by subsets like \"[1,2]\"")
    w = {}
    for k, v in obj["weights"].items():
        S = _key(k, M)
        if S in w:
            raise FormatError(f"subset {k} listed twice")
        w[S] = _rat(v)
    return validate_partition(w, T, M)


def cover_to_json(C: RegularCover) -> dict:
    return {"q": C.q, "sets": [members(S) for S in C.sets]}


def cover_from_json(obj, M: int | None = None) -> RegularCover:
    _fields(obj, {"q", "sets"}, {"M"}, "cover")
    q = _int(obj["q"], "q")
    if "M" in obj:
        M = _int(obj["M"], "M")
    if not isinstance(obj["sets"], list) or not obj["sets"]:
        raise FormatError("cover sets must be a nonempty list")
    sets = tuple(_mask_list(S, M, "cover set") for S in obj["sets"])
    ground = 0
    for S in sets:
        ground |= S
    M = M or max(members(ground), default=0)
    return RegularCover(M, full_mask(M), sets, q)


# -- set functions -------------------------------------------------------------

def set_function_to_json(v: SetFunction) -> dict:
    return {"M": v.M, "values": {mask_key(S): fmt(v(S)) for S in range(1 << v.M)}}


def set_function_from_json(obj) -> SetFunction:
    _fields(obj, {"M", "values"}, set(), "set function")
    M = _int(obj["M"], "M")
    try:
        check_ground(M)
    except ValueError as e:
        raise FormatError(str(e)) from None
    if not isinstance(obj["values"], dict):
        raise FormatError("values must be an object keyed by subsets like \"[1,2]\"")
    vals = {}
    for k, x in obj["values"].items():
        S = _key(k, M)
        if S in vals:
            raise FormatError(f"subset {k} listed twice")
        vals[S] = _rat(x)
    if vals.get(0, Fraction(0)) != 0:
        raise FormatError("the value on [] must be 0")
    vals.setdefault(0, Fraction(0))
    try:
        return SetFunction.from_mapping(M, vals)
    except ValueError as e:
        raise FormatError(str(e)) from None


# -- certificates --------------------------------------------------------------

def _point_to_json(t):
    return [fmt(x) for x in t] if isinstance(t, tuple) else fmt(t)


def _point_from_json(t, kind: str):
    if kind == "boxes":
        if not isinstance(t, list):
            raise FormatError("box points must be coordinate lists")
        return tuple(_rat(x) for x in t)
    if kind == "int":
        v = _rat(t)
        if v.denominator != 1:
            raise FormatError("integer certificate with a fractional point")
        return int(v)
    return _rat(t)


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "kind": cert.kind,
        "axis": cert.axis + 1,  # 1-based, as on the command line
        "cover": cover_to_json(cert.cover) | {"M": cert.cover.M},
        "sets": [set_to_json(X) for X in cert.sets],
        "offsets": [_point_to_json(t) for t in cert.offsets],
        "extremes": [_point_to_json(a) for a in cert.extremes],
        "pieces": [{"k": p.k, "j": p.j, "translator": members(p.translator),
                    "window": [fmt(p.window[0]), fmt(p.window[1])],
                    "shift": _point_to_json(p.shift), "piece": set_to_json(p.piece)}
                   for p in cert.pieces],
        "sumset_measures": [fmt(m) for m in cert.sumset_measures],
        "recollected": [fmt(m) for m in cert.recollected],
        "layer_totals": [fmt(m) for m in cert.layer_totals],
        "total_measure": fmt(cert.total_measure),
        "lhs": fmt(cert.lhs),
        "rhs": fmt(cert.rhs),
        "slack": fmt(cert.slack),
        "verdict": cert.verdict,
        "equality_condition_met": cert.equality_condition_met,
    }


_CERT_FIELDS = {"kind", "axis", "cover", "sets", "offsets", "extremes", "pieces", "sumset_measures",
                "recollected", "layer_totals", "total_measure", "lhs", "rhs", "slack", "verdict",
                "equality_condition_met"}


def certificate_from_json(obj) -> Certificate:
    _fields(obj, _CERT_FIELDS, set(), "certificate")
    kind = obj["kind"]
    if kind not in ("1d", "int", "boxes"):
        raise FormatError(f"unknown certificate kind {kind!r}")
    sets = tuple(set_from_json(X) for X in obj["sets"])
    C = cover_from_json(obj["cover"])
    pieces = []
    for p in obj["pieces"]:
        _fields(p, {"k", "j", "translator", "window", "shift", "piece"}, set(), "piece")
        lo, hi = _pair(p["window"], "window")
        if kind == "int":
            if lo.denominator != 1 or hi.denominator != 1:
                raise FormatError("integer certificate with a fractional window")
            lo, hi = int(lo), int(hi)
        pieces.append(PieceDescriptor(_int(p["k"], "k"), _int(p["j"], "j"),
                                      _mask_list(p["translator"], C.M, "translator"), (lo, hi),
                                      _point_from_json(p["shift"], kind), set_from_json(p["piece"])))
    if not isinstance(obj["verdict"], bool) or obj["verdict"] != (_rat(obj["slack"]) >= 0):
        raise FormatError("verdict does not match the sign of the slack")
    eq = obj["equality_condition_met"]
    if eq is not None and not isinstance(eq, bool):
        raise FormatError("equality_condition_met must be true, false or null")
    return Certificate(kind, C, sets,
                       tuple(_point_from_json(t, kind) for t in obj["offsets"]),
                       tuple(_point_from_json(a, kind) for a in obj["extremes"]),
                       pieces,
                       [_rat(m) for m in obj["sumset_measures"]],
                       [_rat(m) for m in obj["recollected"]],
                       _rat(obj["total_measure"]), _rat(obj["lhs"]), _rat(obj["rhs"]), _rat(obj["slack"]),
                       eq, _int(obj["axis"], "axis") - 1,
                       [_rat(m) for m in obj["layer_totals"]])


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: malformed JSON ({e})") from None
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}") from None
