"""Double description method for pointed polyhedral cones.

The cone is ``{y : R y >= 0}`` for an integer matrix ``R`` of full column
rank.  Extreme rays are kept as primitive integer vectors together with the
bitmask of processed rows they make tight.  Adjacency is decided
combinatorially: two rays are adjacent iff no third ray is tight on every
row that both of them are tight on.
"""

from __future__ import annotations

import time
from math import gcd
from typing import Sequence

from .linalg import independent_subset, inverse, primitive


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its time budget."""


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def extreme_rays(rows: Sequence[Sequence[int]], budget: float | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of ``{y : rows . y >= 0}`` with their tight-row bitmasks.

    Bit ``i`` of a mask refers to ``rows[i]``.  Raises ``ValueError`` when
    the cone is not pointed.
    """
    deadline = None if budget is None else time.monotonic() + budget
    rows = [tuple(int(x) for x in r) for r in rows]
    dim = len(rows[0])
    init = independent_subset(rows)
    if len(init) < dim:
        raise ValueError("cone is not pointed (rows do not have full column rank)")
    inv = inverse([rows[i] for i in init])
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    full = 0
    for i in init:
        full |= 1 << i
    for c in range(dim):
        col = primitive([inv[r][c] for r in range(dim)])
        rays.append(col)
        masks.append(full & ~(1 << init[c]))
    done = set(init)
    order = [i for i in range(len(rows)) if i not in done]
    for h in order:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("double description ran past its budget")
        row = rows[h]
        vals = [_dot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        bit = 1 << h
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_masks = [masks[i] for i in pos] + [masks[i] | bit for i in zero]
        if pos and neg:
            # tight[r] = bitset over current rays that are tight on processed row r
            tight: dict[int, int] = {}
            for idx, m in enumerate(masks):
                mm = m
                while mm:
                    low = mm & -mm
                    r = low.bit_length() - 1
                    tight[r] = tight.get(r, 0) | (1 << idx)
                    mm ^= low
            need = dim - 2
            all_rays = (1 << len(rays)) - 1
            for p in pos:
                mp = masks[p]
                for q in neg:
                    z = mp & masks[q]
                    if z.bit_count() < need:
                        continue
                    common = all_rays
                    zz = z
                    while zz and common.bit_count() > 2:
                        low = zz & -zz
                        common &= tight[low.bit_length() - 1]
                        zz ^= low
                    if common.bit_count() > 2:
                        continue
                    vp, vq = vals[p], vals[q]
                    new = _prim([vp * b - vq * a for a, b in zip(rays[p], rays[q])])
                    new_rays.append(new)
                    new_masks.append(z | bit)
        rays, masks = new_rays, new_masks
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("double description ran past its budget")
    return list(zip(rays, masks))
