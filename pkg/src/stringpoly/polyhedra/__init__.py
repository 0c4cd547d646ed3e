"""Exact polyhedral computations on inequality systems ``b + a . x >= 0``.

Functions accept either an object with a ``rows()`` method (such as
:class:`stringpoly.inequalities.HPolyhedron` after instantiation) or a plain
sequence of integer rows ``(b, a_1, ..., a_d)``.  Nothing here touches
floating point.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from . import lp
from .dd import BudgetExceeded, extreme_rays
from .linalg import affine_rank, det, primitive, rank

__all__ = [
    "VRep", "BudgetExceeded", "PolyhedronError", "LatticeOverflow",
    "as_rows", "normalize_rows", "vertices", "remove_redundant", "redundant_by_incidence",
    "affine_dimension", "is_full_dimensional", "implicit_equalities",
    "lattice_points", "lattice_point_count", "is_integral", "volume",
    "apply_affine", "interior_lattice_points", "interior_lattice_point", "polar_dual",
    "hrep_from_vertices", "probe_vertices", "fraction_str",
]

Row = tuple[int, ...]


class PolyhedronError(ValueError):
    """Raised for empty, unbounded or lower-dimensional input where not allowed."""


class LatticeOverflow(RuntimeError):
    """Raised when lattice enumeration exceeds its candidate cap."""


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_rows(obj) -> list[Row]:
    if hasattr(obj, "rows"):
        obj = obj.rows()
    return normalize_rows(obj)


def normalize_rows(rows: Iterable[Sequence]) -> list[Row]:
    """Primitive integer rows with exact duplicates dropped (order kept)."""
    out: list[Row] = []
    seen = set()
    for r in rows:
        p = primitive(r)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _dim(rows: Sequence[Row]) -> int:
    if not rows:
        raise PolyhedronError("empty inequality system")
    return len(rows[0]) - 1


@dataclass(frozen=True)
class VRep:
    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[int, ...], ...] = ()
    # incidence[i] is the set of row indices tight at vertices[i]
    incidence: tuple[frozenset, ...] = field(default=(), compare=False)

    @property
    def empty(self) -> bool:
        return not self.vertices

    @property
    def bounded(self) -> bool:
        return not self.rays

    def sorted_vertices(self) -> list[tuple[Fraction, ...]]:
        return sorted(self.vertices)


def vertices(obj, budget: float | None = None) -> VRep:
    """Vertices and recession rays by double description on the homogenization."""
    rows = as_rows(obj)
    d = _dim(rows)
    cone = list(rows) + [(1,) + (0,) * d]
    rays = extreme_rays(cone, budget=budget)
    verts, recs, inc = [], [], []
    for ray, mask in rays:
        if ray[0] > 0:
            verts.append(tuple(Fraction(x, ray[0]) for x in ray[1:]))
            inc.append(frozenset(i for i in range(len(rows)) if mask >> i & 1))
        else:
            recs.append(tuple(ray[1:]))
    order = sorted(range(len(verts)), key=lambda i: verts[i])
    return VRep(tuple(verts[i] for i in order), tuple(sorted(recs)),
                tuple(inc[i] for i in order))


def _eval(row: Row, x) -> Fraction:
    return row[0] + sum(a * b for a, b in zip(row[1:], x))


def implicit_equalities(obj) -> list[int]:
    """Indices of rows that hold with equality on the whole (nonempty) polyhedron."""
    rows = as_rows(obj)
    d = _dim(rows)
    res = lp.maximize([0] * d, rows)
    if res.status != lp.OPTIMAL:
        raise PolyhedronError("infeasible system")
    eq = []
    for i, r in enumerate(rows):
        if _eval(r, res.x) > 0:
            continue
        m = lp.maximize(r[1:], rows)
        if m.status == lp.OPTIMAL and m.value + r[0] == 0:
            eq.append(i)
    return eq


def affine_dimension(obj) -> int:
    rows = as_rows(obj)
    d = _dim(rows)
    eq = implicit_equalities(rows)
    return d - rank([rows[i][1:] for i in eq])


def is_full_dimensional(obj) -> bool:
    rows = as_rows(obj)
    d = _dim(rows)
    # maximize s subject to b + a.x >= s, s <= 1
    lifted = [r + (-1,) for r in rows] + [(1,) + (0,) * d + (-1,)]
    res = lp.maximize([0] * d + [1], lifted)
    if res.status == lp.INFEASIBLE:
        return False
    return res.status == lp.UNBOUNDED or res.value > 0


def remove_redundant(obj):
    """Drop every inequality implied by the others.

    Works on a full-dimensional system: a row is kept iff its minimum over the
    remaining kept rows is negative.  Returns an object of the same kind as
    the input when it supports ``select`` (HPolyhedron), otherwise rows.
    """
    rows = as_rows(obj)
    if not is_full_dimensional(rows):
        raise PolyhedronError("redundancy removal needs a full-dimensional system")
    kept = list(range(len(rows)))
    for i in list(kept):
        others = [rows[j] for j in kept if j != i]
        if not others:
            continue
        res = lp.minimize(rows[i][1:], others)
        if res.status == lp.OPTIMAL and res.value + rows[i][0] >= 0:
            kept.remove(i)
    if hasattr(obj, "select"):
        return obj.select(_original_indices(obj, [rows[i] for i in kept]))
    return [rows[i] for i in kept]


def _original_indices(obj, kept_rows) -> list[int]:
    wanted = set(kept_rows)
    out, seen = [], set()
    for idx, r in enumerate(obj.rows()):
        p = primitive(r)
        if p in wanted and p not in seen:
            seen.add(p)
            out.append(idx)
    return out


def redundant_by_incidence(obj, vrep: VRep | None = None) -> list[int]:
    """Indices of non-facet rows of a full-dimensional polytope, from vertex incidences."""
    rows = as_rows(obj)
    d = _dim(rows)
    vrep = vrep or vertices(rows)
    if vrep.rays:
        raise PolyhedronError("polytope expected")
    bad = []
    seen_sets = {}
    for i in range(len(rows)):
        pts = [v for v, inc in zip(vrep.vertices, vrep.incidence) if i in inc]
        key = frozenset(j for j, inc in enumerate(vrep.incidence) if i in inc)
        if len(pts) < d or affine_rank(pts) != d - 1 or key in seen_sets:
            bad.append(i)
        else:
            seen_sets[key] = i
    return bad


def hrep_from_vertices(points: Sequence[Sequence]) -> list[Row]:
    """Facet rows of the convex hull of a full-dimensional point set."""
    gens = [primitive([1] + list(p)) for p in points]
    rays = extreme_rays(gens)
    return normalize_rows(r for r, _ in rays)


def is_integral(vrep: VRep) -> bool:
    return all(Fraction(x).denominator == 1 for v in vrep.vertices for x in v)


# ----------------------------------------------------------------------------
# lattice points


def _eliminate(rows: list[tuple[Row, frozenset]], var: int, step: int) -> list[tuple[Row, frozenset]]:
    """Fourier-Motzkin elimination of column ``var`` (1-based in the row)."""
    pos = [(r, h) for r, h in rows if r[var] > 0]
    neg = [(r, h) for r, h in rows if r[var] < 0]
    out = [(r[:var] + r[var + 1:], h) for r, h in rows if r[var] == 0]
    for rp, hp in pos:
        for rn, hn in neg:
            h = hp | hn
            if len(h) > step + 1:  # Chernikov's rule
                continue
            cp, cn = rp[var], -rn[var]
            comb = [cn * a + cp * b for a, b in zip(rp, rn)]
            del comb[var]
            out.append((primitive(comb), h))
    # dedupe and drop rows whose history strictly contains another's
    best: dict[Row, frozenset] = {}
    for r, h in out:
        if r in best and len(best[r]) <= len(h):
            continue
        best[r] = h
    items = sorted(best.items(), key=lambda it: len(it[1]))
    kept: list[tuple[Row, frozenset]] = []
    for r, h in items:
        if not any(h2 < h for _, h2 in kept):
            kept.append((r, h))
    return kept


def _projections(rows: list[Row], d: int) -> list[list[Row]]:
    """proj[k] describes the projection onto the first k coordinates."""
    proj: list[list[Row]] = [None] * (d + 1)
    cur = [(r, frozenset([i])) for i, r in enumerate(rows)]
    proj[d] = [r for r, _ in cur]
    for k in range(d, 0, -1):
        cur = _eliminate(cur, k, d - k + 1)
        proj[k - 1] = [r for r, _ in cur]
    return proj


def _enumerate_lattice(rows: list[Row], cap: int, collect: bool):
    d = _dim(rows)
    proj = _projections(rows, d)
    if any(r[0] < 0 for r in proj[0]):
        return 0, []
    # for level k split rows by the sign of the coefficient of x_k
    level = []
    for k in range(1, d + 1):
        lo = [r for r in proj[k] if r[k] > 0]
        hi = [r for r in proj[k] if r[k] < 0]
        level.append((lo, hi))
        if not lo or not hi:
            raise PolyhedronError("lattice enumeration needs a bounded polytope")
    count = 0
    visited = 0
    found = []
    x = [0] * d

    def rec(k: int) -> None:
        nonlocal count, visited
        lo_rows, hi_rows = level[k]
        lo = None
        hi = None
        for r in lo_rows:
            s = r[0] + sum(r[i + 1] * x[i] for i in range(k))
            b = -(s // r[k + 1])  # c*x_k >= -s
            if lo is None or b > lo:
                lo = b
        for r in hi_rows:
            s = r[0] + sum(r[i + 1] * x[i] for i in range(k))
            c = -r[k + 1]
            b = s // c  # c*x_k <= s
            if hi is None or b < hi:
                hi = b
        for v in range(lo, hi + 1):
            visited += 1
            if visited > cap:
                raise LatticeOverflow(f"more than {cap} lattice candidates")
            x[k] = v
            if k + 1 == d:
                count += 1
                if collect:
                    found.append(tuple(x))
            else:
                rec(k + 1)

    rec(0)
    return count, found


def lattice_point_count(obj, cap: int = 10 ** 7) -> int:
    rows = as_rows(obj)
    return _enumerate_lattice(rows, cap, False)[0]


def lattice_points(obj, cap: int = 10 ** 7) -> list[tuple[int, ...]]:
    rows = as_rows(obj)
    return _enumerate_lattice(rows, cap, True)[1]


def interior_lattice_points(obj, cap: int = 10 ** 7) -> list[tuple[int, ...]]:
    """Lattice points satisfying every facet inequality strictly."""
    rows = as_rows(obj)
    facets = remove_redundant(rows)
    return [p for p in lattice_points(rows, cap) if all(_eval(r, p) > 0 for r in facets)]


def interior_lattice_point(obj, cap: int = 10 ** 7) -> tuple[int, ...]:
    pts = interior_lattice_points(obj, cap)
    if len(pts) != 1:
        raise PolyhedronError(f"expected one interior lattice point, found {len(pts)}")
    return pts[0]


def polar_dual(vrep: VRep, center: Sequence) -> list[Row]:
    """H-system ``1 + y . (v - center) >= 0`` over the vertices ``v``."""
    if vrep.rays:
        raise PolyhedronError("polar dual needs a polytope")
    return normalize_rows([Fraction(1)] + [Fraction(a) - Fraction(c) for a, c in zip(v, center)]
                          for v in vrep.vertices)


# ----------------------------------------------------------------------------
# volume


def volume(obj, vrep: VRep | None = None) -> Fraction:
    """Euclidean volume of a bounded polyhedron (zero when lower-dimensional)."""
    rows = as_rows(obj)
    d = _dim(rows)
    vrep = vrep or vertices(rows)
    if vrep.rays:
        raise PolyhedronError("volume of an unbounded polyhedron")
    verts = list(vrep.vertices)
    if not verts or affine_rank(verts) < d:
        return Fraction(0)
    if d == 0:
        return Fraction(1)
    facets = [frozenset(j for j, inc in enumerate(vrep.incidence) if i in inc)
              for i in range(len(rows))]
    facets = [f for f in set(facets) if len(f) >= d and affine_rank([verts[j] for j in f]) == d - 1]
    dims: dict[frozenset, int] = {}

    def fdim(face: frozenset) -> int:
        if face not in dims:
            dims[face] = affine_rank([verts[j] for j in face])
        return dims[face]

    memo: dict[frozenset, list[tuple[int, ...]]] = {}

    def triangulate(face: frozenset, k: int) -> list[tuple[int, ...]]:
        if face in memo:
            return memo[face]
        if k == 0:
            memo[face] = [(next(iter(face)),)]
            return memo[face]
        apex = min(face)
        subs = set()
        for f in facets:
            g = face & f
            if len(g) >= k and g != face and fdim(g) == k - 1:
                subs.add(g)
        out = []
        for g in subs:
            if apex in g:
                continue
            for simplex in triangulate(g, k - 1):
                out.append((apex,) + simplex)
        memo[face] = out
        return out

    total = Fraction(0)
    for simplex in triangulate(frozenset(range(len(verts))), d):
        base = verts[simplex[0]]
        mat = [[a - b for a, b in zip(verts[j], base)] for j in simplex[1:]]
        total += abs(det(mat))
    return total / factorial(d)


def apply_affine(matrix, shift, vrep: VRep, perm: Sequence[int] | None = None) -> VRep:
    """Image of a polytope under ``x -> M (pi t) + v``.

    ``perm[j]`` is the source coordinate placed at position ``j`` before ``M``
    acts.
    """
    out = []
    for t in vrep.vertices:
        s = [t[p] for p in perm] if perm is not None else list(t)
        out.append(tuple(sum(Fraction(m) * x for m, x in zip(row, s)) + Fraction(c)
                         for row, c in zip(matrix, shift)))
    return VRep(tuple(sorted(set(out))))


# ----------------------------------------------------------------------------
# randomized vertex probing


def probe_vertices(obj, trials: int = 200, seed: int = 0, budget: float | None = None,
                   stop_on_fractional: bool = True) -> list[tuple[Fraction, ...]]:
    """Vertices found by maximizing random integer objectives with the exact LP.

    Every other objective is minus a sum of randomly chosen inequality normals,
    which reaches vertices with small normal cones far more often.
    """
    rows = as_rows(obj)
    d = _dim(rows)
    rng = random.Random(seed)
    deadline = None if budget is None else time.monotonic() + budget
    found: list[tuple[Fraction, ...]] = []
    for trial in range(trials):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("vertex probing ran past its budget")
        if trial % 2:
            # push towards the face cut out by a random set of inequalities
            chosen = rng.sample(range(len(rows)), rng.randint(1, min(d, len(rows))))
            c = [-10 * sum(rows[i][1 + j] for i in chosen) + rng.randint(-1, 1) for j in range(d)]
        else:
            c = [rng.randint(-50, 50) for _ in range(d)]
        res = lp.maximize(c, rows)
        if res.status != lp.OPTIMAL:
            continue
        if res.x not in found:
            found.append(res.x)
            if stop_on_fractional and any(x.denominator != 1 for x in res.x):
                break
    return found
