"""Finite sets of integers with sumsets and cardinality."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .real_sets import EmptySetError


@dataclass(frozen=True)
class IntegerSet:
    """Strictly increasing tuple of integers.

    The empty set only arises as a truncation result.
    """

    elements: tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[int]) -> "IntegerSet":
        vals = []
        for v in values:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"not an integer: {v!r}")
            vals.append(v)
        return cls(tuple(sorted(set(vals))))

    @property
    def dim(self) -> int:
        return 0

    def is_empty(self) -> bool:
        return not self.elements

    @property
    def min(self) -> int:
        if not self.elements:
            raise EmptySetError("empty integer set")
        return self.elements[0]

    @property
    def max(self) -> int:
        if not self.elements:
            raise EmptySetError("empty integer set")
        return self.elements[-1]

    def measure(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __add__(self, other: "IntegerSet") -> "IntegerSet":
        return sumset(self, other)

    def translate(self, t: int) -> "IntegerSet":
        return IntegerSet(tuple(x + t for x in self.elements))

    def truncate(self, lo: int, hi: int) -> "IntegerSet":
        """Elements in the half-open window ``(lo, hi]``."""
        if lo > hi:
            raise ValueError(f"window ({lo}, {hi}] has lo > hi")
        return IntegerSet(tuple(x for x in self.elements if lo < x <= hi))

    def __repr__(self) -> str:
        return "IntegerSet{" + ", ".join(map(str, self.elements)) + "}"


def sumset(A: IntegerSet, B: IntegerSet) -> IntegerSet:
    if A.is_empty() or B.is_empty():
        raise EmptySetError("sumset needs nonempty operands")
    return IntegerSet(tuple(sorted({a + b for a in A.elements for b in B.elements})))


def cardinality(A: IntegerSet) -> int:
    return len(A.elements)


def arithmetic_progression_increment(A: IntegerSet) -> int | None:
    """Common difference if ``A`` is an arithmetic progression.

    Singletons return 0 (compatible with every increment); None means ``A``
    is not a progression.
    """
    el = A.elements
    if not el:
        raise EmptySetError("empty integer set")
    if len(el) == 1:
        return 0
    rho = el[1] - el[0]
    if all(el[k + 1] - el[k] == rho for k in range(len(el) - 1)):
        return rho
    return None


def common_increment(sets: Iterable[IntegerSet]) -> int | None:
    """Shared progression increment of all ``sets``.

    Returns 0 when every set is a singleton and None when no single increment
    works.
    """
    rho = 0
    for s in sets:
        r = arithmetic_progression_increment(s)
        if r is None:
            return None
        if r == 0:
            continue
        if rho == 0:
            rho = r
        elif r != rho:
            return None
    return rho
