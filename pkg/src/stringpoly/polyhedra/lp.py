"""Two-phase tableau simplex over exact rationals.

Constraints use the row convention of the kernel: a row ``(b, a_1, ..., a_d)``
means ``b + a . x >= 0``.  Variables are free.  Bland's rule prevents
cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(tab: list[list[Fraction]], r: int, c: int) -> None:
    row = tab[r]
    piv = row[c]
    if piv != 1:
        row = [x / piv for x in row]
        tab[r] = row
    nz = [j for j, x in enumerate(row) if x != 0]
    for i, other in enumerate(tab):
        if i == r:
            continue
        f = other[c]
        if f != 0:
            for j in nz:
                other[j] -= f * row[j]


def _run(tab, basis, allowed) -> bool:
    """Maximize the objective stored in the last row; False if unbounded."""
    obj = tab[-1]
    m = len(tab) - 1
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, best[1], enter)
        basis[best[1]] = enter
        obj = tab[-1]


def maximize(objective: Sequence, rows: Sequence[Sequence]) -> LPResult:
    """Maximize ``objective . x`` subject to ``b + a . x >= 0`` for every row."""
    d = len(objective)
    m = len(rows)
    # columns: x+ (d), x- (d), slacks (m), artificials, rhs
    nart = sum(1 for r in rows if r[0] < 0)
    ncol = 2 * d + m + nart
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art = 2 * d + m
    for i, r in enumerate(rows):
        b = Fraction(r[0])
        a = [Fraction(x) for x in r[1:]]
        # -a.x + s = b
        row = [-x for x in a] + a + [Fraction(0)] * (m + nart) + [b]
        row[2 * d + i] = Fraction(1)
        if b < 0:
            row = [-x for x in row]
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(2 * d + i)
        tab.append(row)
    if nart:
        obj = [Fraction(0)] * (ncol + 1)
        for i, r in enumerate(tab):
            if basis[i] >= 2 * d + m:
                obj = [x - y for x, y in zip(obj, r)]
        for j in range(2 * d + m, ncol):
            obj[j] = Fraction(0)
        tab.append(obj)
        _run(tab, basis, range(ncol))
        if tab[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        tab.pop()
        # drive remaining artificials out of the basis
        for i in range(len(tab)):
            if basis[i] >= 2 * d + m:
                c = next((j for j in range(2 * d + m) if tab[i][j] != 0), None)
                if c is not None:
                    _pivot(tab, i, c)
                    basis[i] = c
        keep = [i for i in range(len(tab)) if basis[i] < 2 * d + m]
        tab = [tab[i][:2 * d + m] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
    ncol = 2 * d + m
    obj = [Fraction(0)] * (ncol + 1)
    for j in range(d):
        obj[j] = -Fraction(objective[j])
        obj[d + j] = Fraction(objective[j])
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    tab.append(obj)
    if not _run(tab, basis, range(ncol)):
        return LPResult(UNBOUNDED)
    vals = [Fraction(0)] * ncol
    for i, bcol in enumerate(basis):
        vals[bcol] = tab[i][-1]
    x = tuple(vals[j] - vals[d + j] for j in range(d))
    return LPResult(OPTIMAL, tab[-1][-1], x)


def minimize(objective: Sequence, rows: Sequence[Sequence]) -> LPResult:
    res = maximize([-Fraction(c) for c in objective], rows)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.x)


def feasible_point(rows: Sequence[Sequence], d: int) -> tuple[Fraction, ...] | None:
    res = maximize([0] * d, rows)
    return res.x if res.status == OPTIMAL else None
