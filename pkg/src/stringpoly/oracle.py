"""Two independent dimension oracles for irreducible sl(n+1) representations.

``weyl_dimension`` uses the classical product formula and
``gt_pattern_count`` counts integer interlacing triangles directly; the two
never share code.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .words import DomainError

__all__ = ["weyl_dimension", "gt_pattern_count", "top_row"]


def _check(n: int, weight: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in weight)
    if len(lam) != n:
        raise DomainError(f"weight {lam} does not have rank {n}")
    if any(x < 0 for x in lam):
        raise DomainError(f"weight {lam} is not dominant")
    return lam


def weyl_dimension(n: int, weight: Sequence[int]) -> int:
    lam = _check(n, weight)
    value = Fraction(1)
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            value *= Fraction(sum(lam[i - 1:j - 1]) + j - i, j - i)
    assert value.denominator == 1
    return int(value)


def top_row(weight: Sequence[int]) -> tuple[int, ...]:
    """Partition ``(lambda_1 + ... + lambda_n, ..., lambda_n, 0)``."""
    lam = tuple(weight)
    return tuple(sum(lam[j:]) for j in range(len(lam))) + (0,)


def gt_pattern_count(n: int, weight: Sequence[int]) -> int:
    lam = _check(n, weight)
    return _count_below(top_row(lam))


@lru_cache(maxsize=None)
def _count_below(row: tuple[int, ...]) -> int:
    if len(row) == 1:
        return 1
    total = 0

    def build(j: int, acc: list[int]) -> None:
        nonlocal total
        if j == len(row) - 1:
            total += _count_below(tuple(acc))
            return
        for x in range(row[j + 1], row[j] + 1):
            acc.append(x)
            build(j + 1, acc)
            acc.pop()

    build(0, [])
    return total
