"""Exact rationals and subset bitmasks.

Every scalar in the library is a :class:`fractions.Fraction`; subsets of the
ground set ``[M] = {1, ..., M}`` are integer bitmasks with element ``i`` stored
in bit ``i - 1``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

MAX_GROUND = 16


class RationalFormatError(ValueError):
    pass


def to_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction.

    Floats are refused: a binary float is almost never the number the user
    meant, and every downstream check is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise RationalFormatError(f"not a rational: {value!r}") from exc
    raise RationalFormatError(f"not a rational: {value!r}")


def fmt(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_arith(a: Fraction, b: Fraction, op: str):
    """Exact binary arithmetic; ``cmp`` returns -1, 0 or 1."""
    a, b = to_rational(a), to_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    if op == "cmp":
        return (a > b) - (a < b)
    raise ValueError(f"unknown op {op!r}")


def check_ground(M: int) -> None:
    if not isinstance(M, int) or not 1 <= M <= MAX_GROUND:
        raise ValueError(f"ground size must be in 1..{MAX_GROUND}, got {M!r}")


def subset_iter(M: int) -> Iterator[int]:
    """All ``2**M`` masks in increasing order, empty set first."""
    check_ground(M)
    return iter(range(1 << M))


def full_mask(M: int) -> int:
    return (1 << M) - 1


def mask_of(indices: Iterable[int]) -> int:
    """Mask of a collection of 1-based indices."""
    m = 0
    for i in indices:
        if not isinstance(i, int) or isinstance(i, bool) or i < 1 or i > MAX_GROUND:
            raise ValueError(f"bad ground index {i!r}")
        m |= 1 << (i - 1)
    return m


def members(mask: int) -> list[int]:
    """Sorted 1-based indices in ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order, empty first."""
    bits = members(mask)
    for code in range(1 << len(bits)):
        m = 0
        for pos, i in enumerate(bits):
            if code >> pos & 1:
                m |= 1 << (i - 1)
        yield m


def mask_key(mask: int) -> str:
    """JSON key form, e.g. ``"[1,3]"``."""
    return "[" + ",".join(str(i) for i in members(mask)) + "]"


def parse_mask_key(key: str) -> int:
    key = key.strip()
    if not (key.startswith("[") and key.endswith("]")):
        raise ValueError(f"bad subset key {key!r}")
    body = key[1:-1].strip()
    if not body:
        return 0
    parts = [p.strip() for p in body.split(",")]
    try:
        idx = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad subset key {key!r}") from exc
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated index in subset key {key!r}")
    return mask_of(idx)


def solve_exact(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a square system by Gaussian elimination; None if singular."""
    n = len(A)
    rows = [[Fraction(x) for x in A[r]] + [Fraction(b[r])] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        pr = rows[col]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col] / p
                rr = rows[r]
                for c in range(col, n + 1):
                    rr[c] -= f * pr[c]
    return [rows[r][n] / rows[r][r] for r in range(n)]
