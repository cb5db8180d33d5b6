"""Exact rational simplex for ``max c.x  s.t.  A x = b, x >= 0``.

Dense tableau, two phases, Bland's rule throughout so degenerate problems
(which the Bondareva-Shapley LPs always are) cannot cycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import solve_exact


class LPError(RuntimeError):
    pass


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: list[Fraction] | None
    duals: list[Fraction] | None
    basis: list[int] | None


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    pr = T[r]
    p = pr[c]
    if p != 1:
        T[r] = pr = [v / p for v in pr]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                T[i] = [a - f * b for a, b in zip(row, pr)]


def _run(T: list[list[Fraction]], basis: list[int], obj: list[Fraction], ncols: int) -> bool:
    """Maximize ``obj`` over the tableau; False means unbounded."""
    m = len(T)
    while True:
        # reduced cost  c_j - c_B B^-1 A_j
        entering = -1
        for j in range(ncols):
            if j in basis:
                continue
            rc = obj[j] - sum(obj[basis[i]] * T[i][j] for i in range(m) if T[i][j])
            if rc > 0:
                entering = j
                break
        if entering < 0:
            return True
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        r = best[1]
        _pivot(T, r, entering)
        basis[r] = entering


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """max c.x subject to A x = b, x >= 0; duals y satisfy A^T y >= c."""
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    rows = []
    sign = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if len(row) != n:
            raise LPError("constraint row has the wrong length")
        if bi < 0:
            row, bi = [-v for v in row], -bi
            sign.append(-1)
        else:
            sign.append(1)
        rows.append((row, bi))

    # phase 1 with one artificial per row
    T = [row + [Fraction(int(k == i)) for k in range(m)] + [bi] for i, (row, bi) in enumerate(rows)]
    basis = list(range(n, n + m))
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _run(T, basis, phase1, n + m)
    if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
        return LPResult("infeasible", None, None, None, None)

    # drive artificials out of the basis; rows where that fails are redundant
    keep = []
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0 and j not in basis), None)
            if j is None:
                continue
            _pivot(T, i, j)
            basis[i] = j
        keep.append(i)
    T = [[*T[i][:n], T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    if not _run(T, basis, c, n):
        return LPResult("unbounded", None, None, None, None)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum((c[j] * x[j] for j in range(n)), Fraction(0))

    # duals from B^T y = c_B on the kept rows; redundant rows get 0
    kept_rows = [rows[i][0] for i in keep]
    k = len(keep)
    Bt = [[kept_rows[r][basis[col]] for r in range(k)] for col in range(k)]
    y_kept = solve_exact(Bt, [c[j] for j in basis]) if k else []
    if y_kept is None:
        raise LPError("singular final basis")
    duals = [Fraction(0)] * m
    for pos, i in enumerate(keep):
        duals[i] = y_kept[pos] * sign[i]
    return LPResult("optimal", value, x, duals, basis)
