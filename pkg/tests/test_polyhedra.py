import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stringpoly.gc import gc_polytope
from stringpoly.inequalities import HPolyhedron, LinearForm, Weight, string_cone, string_polytope
from stringpoly.oracle import gt_pattern_count
from stringpoly.polyhedra import (
    LatticeOverflow, PolyhedronError, VRep, affine_dimension, apply_affine, hrep_from_vertices,
    interior_lattice_points, is_full_dimensional, is_integral, lattice_point_count, lattice_points,
    lp, polar_dual, probe_vertices, remove_redundant, vertices, volume,
)
from stringpoly.words import ReducedWord, enumerate_reduced_words

W = ReducedWord.parse
F = Fraction


def solve_exact(a, b):
    """Gauss-Jordan over the rationals; None when singular."""
    m = [[F(x) for x in row] + [F(y)] for row, y in zip(a, b)]
    size = len(m)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(size):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(m[i][-1] / m[i][i] for i in range(size))


def brute_vertices(rows):
    """Vertices as feasible unique solutions of every d-subset of tight rows."""
    d = len(rows[0]) - 1
    out = set()
    for subset in itertools.combinations(rows, d):
        x = solve_exact([r[1:] for r in subset], [-r[0] for r in subset])
        if x is not None and all(r[0] + sum(a * v for a, v in zip(r[1:], x)) >= 0 for r in rows):
            out.add(x)
    return sorted(out)


def box_count(rows, lo, hi):
    d = len(rows[0]) - 1
    return sum(1 for x in itertools.product(range(lo, hi + 1), repeat=d)
               if all(r[0] + sum(a * v for a, v in zip(r[1:], x)) >= 0 for r in rows))


CUBE = [(1, 1, 0, 0), (1, -1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (1, 0, 0, 1), (1, 0, 0, -1)]


def test_lp_statuses():
    res = lp.maximize([1, 1], [(0, 1, 0), (0, 0, 1), (4, -1, -1)])
    assert res.status == lp.OPTIMAL and res.value == 4
    assert lp.maximize([1, 0], [(0, 1, 0), (0, 0, 1)]).status == lp.UNBOUNDED
    assert lp.maximize([1, 0], [(-1, 1, 0), (0, -1, 0)]).status == lp.INFEASIBLE


def test_gc_vertices_and_volume():
    poly = gc_polytope(2, Weight((2, 2)))
    verts = vertices(poly).sorted_vertices()
    # layout (x11, x21, x22)
    want = sorted((F(c), F(a), F(b)) for a, b, c in
                  [(4, 2, 4), (4, 2, 2), (4, 0, 4), (4, 0, 0), (2, 0, 2), (2, 0, 0), (2, 2, 2)])
    assert verts == want
    assert volume(poly) == 8


def test_gc_volume_by_iterated_integral():
    # x21 in [2,4], x22 in [0,2], x11 between them; integrate x21 - x22 by the
    # midpoint rule on unit cells, which is exact for a linear integrand
    total = sum(F(a - b) for a in (F(5, 2), F(7, 2)) for b in (F(1, 2), F(3, 2)))
    assert total == 8
    assert volume(gc_polytope(2, Weight((2, 2)))) == total


def test_standard_string_polytope_vertices():
    poly = string_polytope(W("1,2,1"), Weight((2, 2)))
    want = sorted(tuple(map(F, v)) for v in
                  [(0, 0, 0), (2, 0, 0), (4, 2, 0), (2, 4, 2), (0, 4, 2), (0, 2, 2), (0, 2, 0)])
    assert vertices(poly).sorted_vertices() == want
    assert volume(poly) == 8
    assert lattice_point_count(poly) == 27


def test_string_cone_apex_and_rays():
    vrep = vertices(string_cone(W("1,2,1")))
    assert vrep.vertices == ((0, 0, 0),)
    assert set(vrep.rays) == {(1, 0, 0), (0, 1, 0), (0, 1, 1)}


def test_zero_weight_is_a_point():
    for word in enumerate_reduced_words(3)[:4]:
        vrep = vertices(string_polytope(word, Weight((0, 0, 0))))
        assert vrep.vertices == ((0,) * 6,)


@pytest.mark.parametrize("word", enumerate_reduced_words(3), ids=str)
def test_vertices_match_brute_force(word):
    poly = string_polytope(word, Weight((1, 1, 1)))
    assert vertices(poly).sorted_vertices() == brute_vertices(poly.rows())


@pytest.mark.parametrize("word", enumerate_reduced_words(3), ids=str)
def test_no_redundancy_for_regular_weight(word):
    from stringpoly.paths import path_count
    poly = string_polytope(word, Weight((1, 1, 1)))
    kept = remove_redundant(poly)
    assert len(kept) == len(poly) == path_count(word) + 6
    assert vertices(kept).sorted_vertices() == vertices(poly).sorted_vertices()


def test_facet_count_for_rank_two():
    assert len(remove_redundant(string_polytope(W("1,2,1"), Weight((1, 1))))) == 6


def test_redundant_rows_removed():
    rows = CUBE + [(2, 1, 0, 0), (3, 1, 1, 1)]
    assert sorted(remove_redundant(rows)) == sorted(CUBE)
    dup = HPolyhedron(3, tuple(LinearForm(r[1:], (r[0],)) for r in CUBE + [(2, 2, 0, 0)]))
    assert len(dup) == 6


def test_lower_dimensional_input_is_flagged():
    flat = CUBE + [(0, 0, 0, 1), (0, 0, 0, -1)]
    assert not is_full_dimensional(flat)
    assert affine_dimension(flat) == 2
    with pytest.raises(PolyhedronError):
        remove_redundant(flat)


@pytest.mark.parametrize("n,weight", [(n, w) for n in (1, 2, 3)
                                      for w in itertools.product(range(4), repeat=n)
                                      if sum(w) <= 6 and (n < 3 or sum(w) <= 4)])
def test_gc_lattice_points_match_patterns(n, weight):
    assert lattice_point_count(gc_polytope(n, Weight(weight))) == gt_pattern_count(n, weight)


def test_lattice_points_listing_and_cap():
    pts = lattice_points(CUBE)
    assert len(pts) == 27 and (0, 0, 0) in pts
    with pytest.raises(LatticeOverflow):
        lattice_point_count(CUBE, cap=5)


def test_interior_point_and_reflexive_dual():
    poly = string_polytope(W("1,2,1"), Weight((2, 2)))
    assert interior_lattice_points(poly) == [(1, 2, 1)]
    dual = polar_dual(vertices(poly), (1, 2, 1))
    assert is_integral(vertices(dual))


def test_dual_of_cube_is_cross_polytope():
    dual = polar_dual(vertices(CUBE), (0, 0, 0))
    verts = vertices(dual).sorted_vertices()
    assert verts == sorted(tuple(F(s if i == j else 0) for j in range(3))
                           for i in range(3) for s in (1, -1))
    assert sorted(hrep_from_vertices(verts)) == sorted(
        (1,) + s for s in itertools.product((1, -1), repeat=3))


def test_volume_of_simplex_and_unimodular_image():
    simplex = [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, -1, -1, -1)]
    assert volume(simplex) == F(1, 6)
    vrep = vertices(simplex)
    m = [[1, 2, 0], [0, 1, 3], [0, 0, -1]]
    image = apply_affine(m, [5, -1, 2], vrep)
    assert volume(hrep_from_vertices(image.vertices)) == F(1, 6)


def test_unbounded_volume_rejected():
    with pytest.raises(PolyhedronError):
        volume(string_cone(W("1,2,1")))


def test_steinert_polytope():
    word = W("1,3,2,1,3,2,4,3,2,1,5,4,3,2,1")
    poly = string_polytope(word, Weight.fundamental(3, 5))
    vrep = vertices(poly)
    assert not is_integral(vrep)
    assert any(all(x in (0, F(1, 2)) for x in v) and F(1, 2) in v for v in vrep.vertices)
    assert is_integral(vertices(string_polytope(word, Weight.fundamental(3, 5, 2))))
    probed = probe_vertices(poly, trials=4000)
    assert any(x.denominator != 1 for x in probed[-1])


def test_integral_flag():
    assert is_integral(VRep(((F(0), F(1)),)))
    assert not is_integral(VRep(((F(1, 2), F(1)),)))


small_rows = st.lists(st.tuples(st.integers(0, 4), st.integers(-2, 2), st.integers(-2, 2),
                                st.integers(-2, 2)), max_size=4)


@given(small_rows)
def test_random_polytopes_against_brute_force(extra):
    rows = CUBE + [r for r in extra if any(r[1:])]
    assert vertices(rows).sorted_vertices() == brute_vertices(rows)
    assert lattice_point_count(rows) == box_count(rows, -1, 1)


@given(small_rows)
def test_volume_invariant_under_unimodular_maps(extra):
    rows = CUBE + [r for r in extra if any(r[1:])]
    if not is_full_dimensional(rows):
        return
    vrep = vertices(rows)
    m = [[1, 1, 0], [0, 1, 0], [2, 0, -1]]
    image = apply_affine(m, [1, 0, 3], vrep)
    assert volume(hrep_from_vertices(image.vertices)) == volume(rows)
