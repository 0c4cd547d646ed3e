"""Gelfand-Cetlin polytopes and the explicit unimodular map from GC-type words.

Coordinates on both sides use the triangular layout ``(1,1), (2,1), (2,2),
(3,1), ...``: on the string side ``t_{k,j}`` is the ``j``-th letter of block
``k`` of an extension-built word, on the GC side ``x_{k,j}`` is the ``j``-th
entry of row ``k`` of a pattern whose fixed top row ``n+1`` is the partition of
the weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .inequalities import HPolyhedron, LinearForm, Weight, lambda_functional, string_polytope
from .polyhedra import apply_affine, remove_redundant, vertices
from .polyhedra.linalg import det
from .paths import path_count
from .words import (
    DomainError, ReducedWord, commutation_classes, gc_type, layout_index,
    sigma_word, two_move_permutation,
)

__all__ = [
    "GcPolytope", "GcMap", "ClassRow",
    "gc_polytope", "a_block", "d_block", "build_map", "map_forms", "gc_map", "verify_gc_map",
    "classify", "class_row", "weight_gap", "lambda_recursion_holds", "gap_identity_holds",
    "weight_gap_holds", "letter_pattern_holds", "x_recursion_holds",
]


def _top_const(n: int, j: int) -> tuple[int, ...]:
    """Constant vector of ``x_{n+1,j} = lambda_j + ... + lambda_n``."""
    const = [0] * (n + 1)
    for i in range(j, n + 1):
        const[i] = 1
    return tuple(const)


@dataclass(frozen=True)
class GcPolytope:
    n: int
    weight: Weight | None
    system: HPolyhedron

    def rows(self):
        return self.system.rows()


def gc_polytope(n: int, weight: Weight | None = None) -> GcPolytope:
    """Interlacing inequalities ``x_{k+1,j} >= x_{k,j} >= x_{k+1,j+1}``."""
    if weight is not None and weight.rank != n:
        raise DomainError(f"weight of rank {weight.rank} for rank {n}")
    total = n * (n + 1) // 2
    zero = (0,) * (n + 1)

    def var(k: int, j: int) -> LinearForm:
        if k == n + 1:
            const = _top_const(n, j) if j <= n else zero
            return LinearForm((0,) * total, const)
        coeffs = [0] * total
        coeffs[layout_index(k, j) - 1] = 1
        return LinearForm(tuple(coeffs), zero)

    forms, labels = [], []
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            forms.append(var(k + 1, j) - var(k, j))
            labels.append(f"x{k + 1},{j} >= x{k},{j}")
            forms.append(var(k, j) - var(k + 1, j + 1))
            labels.append(f"x{k},{j} >= x{k + 1},{j + 1}")
    system = HPolyhedron(total, tuple(forms), tuple(labels))
    if weight is not None:
        system = system.instantiate(weight)
    return GcPolytope(n, weight, system)


def a_block(k: int) -> list[list[int]]:
    m = [[0] * k for _ in range(k)]
    for i in range(k):
        m[i][i] = 1
        if i + 1 < k:
            m[i][i + 1] = -1
    return m


def d_block(k: int) -> list[list[int]]:
    m = [[0] * k for _ in range(k)]
    for i in range(1, k + 1):
        m[i - 1][k - i] = -1
        if i >= 2:
            m[i - 1][k - i + 1] = 1
    return m


def build_map(sigma: Sequence[str], weight: Weight | None = None):
    """Matrix ``M`` (N x N) and shift ``v`` of the affine map ``t -> M t + v``.

    With ``weight=None`` the shift is returned symbolically: each entry is a
    constant vector over ``(1, lambda_1, ..., lambda_n)``.
    """
    n = len(sigma)
    blocks: dict[tuple[int, int], list[list[int]]] = {}
    shift: dict[int, list[tuple[int, ...]]] = {}
    for k in range(n, 0, -1):
        diag = a_block(k) if sigma[k - 1] == "A" else d_block(k)
        for l in range(1, n + 1):
            if l == k:
                blocks[(k, l)] = diag
            elif k == n:
                blocks[(k, l)] = [[0] * l for _ in range(k)]
            else:
                above = blocks[(k + 1, l)]
                blocks[(k, l)] = above[1:] if sigma[k - 1] == "A" else above[:-1]
        if k == n:
            start = 2 if sigma[n - 1] == "A" else 1
            shift[n] = [_top_const(n, j) if j <= n else (0,) * (n + 1)
                        for j in range(start, start + n)]
        else:
            above = shift[k + 1]
            shift[k] = above[1:] if sigma[k - 1] == "A" else above[:-1]
    matrix = []
    vec = []
    for k in range(1, n + 1):
        for r in range(k):
            row = []
            for l in range(1, n + 1):
                row.extend(blocks[(k, l)][r])
            matrix.append(row)
            vec.append(shift[k][r])
    if weight is not None:
        lam = (1,) + weight.coefficients
        vec = [sum(c * w for c, w in zip(entry, lam)) for entry in vec]
    return matrix, vec


def map_forms(sigma: Sequence[str]) -> list[LinearForm]:
    """The coordinates ``x_{k,j}`` of the image as symbolic linear forms in ``t``."""
    matrix, vec = build_map(sigma)
    return [LinearForm(tuple(row), tuple(c)) for row, c in zip(matrix, vec)]


@dataclass(frozen=True)
class GcMap:
    word: ReducedWord
    sigma: tuple[str, ...]
    permutation: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    shift: tuple

    def apply(self, t: Sequence) -> tuple:
        s = [t[p] for p in self.permutation]
        return tuple(sum(m * x for m, x in zip(row, s)) + c for row, c in zip(self.matrix, self.shift))


def gc_map(word: ReducedWord, weight: Weight | None = None) -> GcMap | None:
    sigma = gc_type(word)
    if sigma is None:
        return None
    target = sigma_word(sigma)
    perm = two_move_permutation(word, target)
    matrix, vec = build_map(sigma, weight)
    return GcMap(word, sigma, perm, tuple(map(tuple, matrix)), tuple(vec))


def verify_gc_map(word: ReducedWord, weight: Weight) -> bool:
    """Exact vertex-set check that the map sends the string polytope onto GC."""
    gmap = gc_map(word, weight)
    if gmap is None:
        return False
    if abs(det(gmap.matrix)) != 1:
        return False
    source = vertices(string_polytope(word, weight))
    image = apply_affine(gmap.matrix, gmap.shift, source, gmap.permutation)
    target = vertices(gc_polytope(word.rank, weight))
    return image.sorted_vertices() == target.sorted_vertices()


# ----------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassRow:
    canonical: ReducedWord
    class_size: int
    path_count: int
    facets: int | None
    simplicial: bool
    gc_type: tuple[str, ...] | None
    map_verified: bool

    @property
    def consistent(self) -> bool:
        n = self.canonical.rank
        total = n * (n + 1) // 2
        flags = [self.simplicial, self.gc_type is not None, self.map_verified]
        if self.facets is not None:
            # every path and every lambda-bound must survive as a facet
            if self.facets != self.path_count + total:
                return False
            flags.append(self.facets == n * (n + 1))
        return all(flags) or not any(flags)


def class_row(word: ReducedWord, class_size: int, weight: Weight, verify_maps: bool = True) -> ClassRow:
    """Classification data for the class of ``word``."""
    n = word.rank
    total = n * (n + 1) // 2
    count = path_count(word)
    facets = None
    if weight.regular:
        facets = len(remove_redundant(string_polytope(word, weight)))
    sigma = gc_type(word)
    if not verify_maps:
        verified = sigma is not None
    else:
        verified = sigma is not None and verify_gc_map(word, weight)
    return ClassRow(word, class_size, count, facets, count == total, sigma, verified)


def classify(n: int, weight: Weight, verify_maps: bool = True) -> list[ClassRow]:
    """One row per commutation class, sorted by canonical word.

    Facet counts are only computed for regular weights.
    """
    if weight.rank != n:
        raise DomainError(f"weight of rank {weight.rank} for rank {n}")
    return [class_row(cls.canonical, cls.size, weight, verify_maps) for cls in commutation_classes(n)]


# ----------------------------------------------------------------------------
# exact identities behind the map


def weight_gap(sigma: Sequence[str], k: int, j: int) -> tuple[int, ...]:
    """``v_k(j) - v_k(j+1)`` as a constant vector; row ``n+1`` uses the top row."""
    n = len(sigma)
    if k == n + 1:
        const = [0] * (n + 1)
        const[j] = 1
        return tuple(const)
    _, vec = build_map(sigma)
    a = vec[layout_index(k, j) - 1]
    b = vec[layout_index(k, j + 1) - 1]
    return tuple(x - y for x, y in zip(a, b))


def _unit(n: int, i: int) -> tuple[int, ...]:
    const = [0] * (n + 1)
    const[i] = 1
    return tuple(const)


def weight_gap_holds(sigma: Sequence[str]) -> bool:
    """Each gap ``v_k(j) - v_k(j+1)`` is the weight coordinate of a node in block ``k``."""
    n = len(sigma)
    word = sigma_word(sigma)

    def letter(k, j):
        return word[layout_index(k, j) - 1]

    for k in range(1, n + 1):
        for j in range(1, k):
            i = letter(k, j + 1) if sigma[k - 1] == "A" else letter(k, k - j + 1)
            if weight_gap(sigma, k, j) != _unit(n, i):
                return False
    return True


def _t(n: int, k: int, j: int) -> LinearForm:
    total = n * (n + 1) // 2
    coeffs = [0] * total
    if k <= n and 1 <= j <= k:
        coeffs[layout_index(k, j) - 1] = 1
    return LinearForm(tuple(coeffs))


def _s(sigma, k: int, j: int) -> LinearForm:
    n = len(sigma)
    if k > n:
        return LinearForm((0,) * (n * (n + 1) // 2))
    return lambda_functional(tuple(sigma), k, j)


def lambda_recursion_holds(sigma: Sequence[str]) -> bool:
    """The recursion expressing ``S_{k,j}`` through ``S_{k+1,.}``."""
    n = len(sigma)
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            lhs = _s(sigma, k, j)
            if k == n:
                rhs = _t(n, n, j + 1) - _t(n, n, j)
            elif sigma[k - 1] == sigma[k]:
                rhs = (-_t(n, k, j) + _t(n, k, j + 1) + _t(n, k + 1, j)
                       - _t(n, k + 1, j + 1) + _s(sigma, k + 1, j + 1))
            else:
                rhs = (-_t(n, k, j) + _t(n, k, j + 1) + _t(n, k + 1, k - j + 1)
                       - _t(n, k + 1, k - j + 2) + _s(sigma, k + 1, k - j + 2))
            if lhs.coeffs != rhs.coeffs:
                return False
    return True


def gap_identity_holds(sigma: Sequence[str]) -> bool:
    """``x_{k,j} - x_{k,j+1}`` equals a t-difference plus ``S`` plus a weight gap."""
    n = len(sigma)
    xs = map_forms(sigma)

    def x(k, j):
        return xs[layout_index(k, j) - 1]

    def gap(k, j):
        return LinearForm((0,) * len(xs), weight_gap(sigma, k, j))

    for k in range(1, n + 1):
        for j in range(1, k):
            lhs = x(k, j) - x(k, j + 1)
            if sigma[k - 1] == "A":
                rhs = _t(n, k, j) - _t(n, k, j + 1) + _s(sigma, k, j + 1) + gap(k + 1, j + 1)
            else:
                rhs = (_t(n, k, k - j) - _t(n, k, k - j + 1) + _s(sigma, k, k - j + 1)
                       + gap(k + 1, j))
            if lhs.coeffs != rhs.coeffs or _pad(lhs.const, n) != _pad(rhs.const, n):
                return False
    return True


def _pad(const, n):
    return tuple(const) + (0,) * (n + 1 - len(const))


def x_recursion_holds(sigma: Sequence[str]) -> bool:
    """Row ``k`` of the image is obtained from row ``k+1`` by t-differences."""
    n = len(sigma)
    xs = map_forms(sigma)
    total = len(xs)

    def x(k, j):
        if k == n + 1:
            return LinearForm((0,) * total, _top_const(n, j) if j <= n else (0,) * (n + 1))
        return xs[layout_index(k, j) - 1]

    for k in range(1, n + 1):
        for j in range(1, k + 1):
            if sigma[k - 1] == "A":
                rhs = x(k + 1, j + 1) + _t(n, k, j) - _t(n, k, j + 1)
            else:
                rhs = x(k + 1, j) - _t(n, k, k - j + 1) + _t(n, k, k - j + 2)
            lhs = x(k, j)
            if lhs.coeffs != rhs.coeffs or _pad(lhs.const, n) != _pad(rhs.const, n):
                return False
    return True


def letter_pattern_holds(sigma: Sequence[str]) -> bool:
    """Monotonicity of blocks and the index relation between neighbouring blocks."""
    n = len(sigma)
    word = sigma_word(sigma)

    def i(k, j):
        return word[layout_index(k, j) - 1]

    for k in range(1, n + 1):
        block = [i(k, j) for j in range(1, k + 1)]
        want = sorted(block) if sigma[k - 1] == "A" else sorted(block, reverse=True)
        if block != want:
            return False
    for k in range(1, n):
        pair = (sigma[k - 1], sigma[k])
        for j in range(1, k + 1):
            if pair in (("A", "A"), ("D", "D")):
                if i(k, j) != i(k + 1, j + 1):
                    return False
            elif i(k, j) != i(k + 1, k - j + 2):
                return False
    return True
