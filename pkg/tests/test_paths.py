import itertools
import random

import pytest
from hypothesis import given, strategies as st

from crystal_oracle import string_parametrizations
from helpers import delete_wire, kept_nodes
from stringpoly.paths import (
    RigorousPath, all_paths, canonical_path, check_rigorous, enumerate_paths, is_new, path_count,
)
from stringpoly.polyhedra import hrep_from_vertices
from stringpoly.wiring import build_diagram
from stringpoly.words import (
    DomainError, ReducedWord, contract, enumerate_reduced_words, ind, sigma_word, two_move,
)

W = ReducedWord.parse
SIGMA4 = enumerate_reduced_words(3)
SIGMA5 = enumerate_reduced_words(4)


def forms(word, k):
    return sorted(p.coeffs for p in enumerate_paths(word, k))


def test_standard_word_per_level():
    w = W("1,2,1,3,2,1")
    assert forms(w, 1) == sorted([(1, 0, 0, 0, 0, 0), (0, 1, -1, 0, 0, 0), (0, 0, 0, 1, -1, 0)])
    assert forms(w, 2) == sorted([(0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, -1)])
    assert forms(w, 3) == [(0, 0, 0, 0, 0, 1)]


def test_second_word_per_level():
    w = W("2,1,3,2,3,1")
    assert forms(w, 1) == [(0, 0, 0, 0, 1, 0)]
    assert forms(w, 2) == sorted([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, -1, 0), (0, 0, 1, 0, 0, -1),
                                  (0, 1, 1, -1, 0, 0), (0, 0, 0, 1, -1, -1)])
    assert forms(w, 3) == [(0, 0, 0, 0, 0, 1)]


def test_expressions():
    paths = enumerate_paths(W("2,1,3,2,3,1"), 2)
    assert "L2 -> t3 -> t4 -> t2 -> L3" in [p.node_expression() for p in paths]
    assert "l2 -> l4 -> l1 -> l3" in [p.wire_expression() for p in paths]
    p = next(p for p in enumerate_paths(W("1,2,1,3,2,1"), 1) if p.switch_nodes == (2, 3))
    assert p.wires == (1, 3, 2)


def test_path_counts():
    assert path_count(W("1,2,1,3,2,1")) == 6
    assert path_count(W("2,1,3,2,3,1")) == 7
    assert path_count(W("1,2,1")) == 3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_standard_word_is_simplicial(n):
    word = sigma_word(("D",) * n)
    assert path_count(word) == len(word)


def test_level_out_of_range():
    with pytest.raises(DomainError):
        enumerate_paths(W("1,2,1"), 3)


def _oracle_cone(word, weight):
    """Homogeneous facets of the tangent cone at 0 of the crystal's string set."""
    points = sorted(string_parametrizations(weight, word.letters))
    return {tuple(r[1:]) for r in hrep_from_vertices(points) if r[0] == 0}


@pytest.mark.parametrize("word", SIGMA4, ids=str)
def test_string_cone_matches_crystal_rank3(word):
    assert _oracle_cone(word, (2, 2, 2)) == {p.coeffs for p in all_paths(word)}


@pytest.mark.parametrize("word", random.Random(7).sample(SIGMA5, 3), ids=str)
def test_string_cone_matches_crystal_rank4(word):
    assert _oracle_cone(word, (1, 1, 1, 1)) == {p.coeffs for p in all_paths(word)}


@pytest.mark.parametrize("word", SIGMA4 + SIGMA5, ids=str)
def test_enumerated_paths_pass_independent_check(word):
    for p in all_paths(word):
        assert check_rigorous(word, p)
        assert p.wires[0] == p.k and p.wires[-1] == p.k + 1
        d = build_diagram(word)
        for j, a, b in zip(p.switch_nodes, p.wires, p.wires[1:]):
            assert set(d.node(j).wires) == {a, b}
            assert p.coeffs[j - 1] == (1 if a < b else -1)
        assert len(set(p.switch_nodes)) == len(p.switch_nodes)


def test_check_rejects_straight_pass_over_blocked_crossing():
    # travels down l4 straight over l3 (both downward, 4 > 3)
    w = W("1,2,3,2,1,2")
    bad = RigorousPath(1, (3, 5), (1, 4, 2), (0, 0, 1, 0, -1, 0))
    assert not check_rigorous(w, bad)
    assert bad.coeffs not in {p.coeffs for p in all_paths(w)}


def test_check_rejects_wrong_endpoints_and_wires():
    w = W("1,2,1")
    good = enumerate_paths(w, 1)[0]
    assert not check_rigorous(w, RigorousPath(1, good.switch_nodes, (2,) + good.wires[1:], good.coeffs))
    assert not check_rigorous(w, RigorousPath(1, (), (1,), (0, 0, 0)))


@pytest.mark.parametrize("word", SIGMA4, ids=str)
def test_paths_brute_force(word):
    """Every wire sequence passing the checker appears in the enumeration."""
    d = build_diagram(word)
    n = word.rank
    found = {(p.k, p.switch_nodes) for p in all_paths(word)}
    # a path is determined by its switch nodes; try all injective node sequences up to length 4
    for k in range(1, n + 1):
        for length in range(1, 5):
            for nodes in itertools.permutations(range(1, len(word) + 1), length):
                wires = [k]
                ok = True
                for j in nodes:
                    if wires[-1] not in d.node(j).wires:
                        ok = False
                        break
                    wires.append(d.node(j).other(wires[-1]))
                if not ok or wires[-1] != k + 1:
                    continue
                coeffs = [0] * len(word)
                for j, a, b in zip(nodes, wires, wires[1:]):
                    coeffs[j - 1] += 1 if a < b else -1
                cand = RigorousPath(k, nodes, tuple(wires), tuple(coeffs))
                assert check_rigorous(word, cand) == ((k, nodes) in found)


def test_canonical_paths_example():
    w = W("4,3,2,1,4,2,3,2,4,3")
    got = [canonical_path(w, k, "D").wires for k in (1, 2, 3, 4)]
    assert got == [(4, 2, 1, 5), (4, 2, 5), (4, 3, 5), (4, 5)]


def test_canonical_path_rank_one():
    p = canonical_path(W("1"), 1, "D")
    assert p.wires == (1, 2) and p.switch_nodes == (1,)


@pytest.mark.parametrize("bullet", ["A", "D"])
def test_canonical_paths_when_index_vanishes(bullet):
    outer = {"D": lambda n: n + 1, "A": lambda n: 1}[bullet]
    for word in SIGMA4 + SIGMA5:
        if ind(word, bullet) != 0:
            continue
        n = word.rank
        for k in range(1, n + 1):
            wires = canonical_path(word, k, bullet).wires
            # the outer wire is itself an endpoint wire at the extreme level
            if (bullet == "D" and k == n) or (bullet == "A" and k == 1):
                assert wires == (k, k + 1)
            else:
                assert wires == (k, outer(n), k + 1)


@pytest.mark.parametrize("bullet", ["A", "D"])
def test_canonical_paths_are_rigorous_and_new(bullet):
    for word in SIGMA4 + SIGMA5:
        n = word.rank
        outer = n + 1 if bullet == "D" else 1
        d = build_diagram(word)
        for k in range(1, n + 1):
            p = canonical_path(word, k, bullet)
            assert check_rigorous(word, p)
            assert is_new(p, word, bullet)
            # the switch onto the outer wire: from l_k (D) or from l_{k+1} (A)
            inner = k if bullet == "D" else k + 1
            assert d.crossing(inner, outer) in p.switch_nodes


def test_is_new_examples():
    w = W("1,2,1,3,2,1")
    by_nodes = {p.switch_nodes: p for p in all_paths(w)}
    assert not is_new(by_nodes[(2, 3)], w, "D")
    assert is_new(by_nodes[(4, 5)], w, "D")


@pytest.mark.parametrize("bullet", ["A", "D"])
def test_growth_under_contraction(bullet):
    for word in SIGMA4 + SIGMA5:
        n = word.rank
        smaller = contract(word, bullet)
        assert path_count(word) >= path_count(smaller) + n
        old = [p for p in all_paths(word) if not is_new(p, word, bullet)]
        assert len(old) == path_count(smaller)


@pytest.mark.parametrize("bullet", ["A", "D"])
def test_old_paths_restrict_to_contraction(bullet):
    for word in SIGMA4 + SIGMA5:
        outer = word.rank + 1 if bullet == "D" else 1
        keep = kept_nodes(word, outer)
        old = {p.coeffs for p in all_paths(word) if not is_new(p, word, bullet)}
        for c in old:
            assert all(c[j - 1] == 0 for j in range(1, len(word) + 1) if j not in keep)
        restricted = {tuple(c[j - 1] for j in keep) for c in old}
        assert restricted == {p.coeffs for p in all_paths(delete_wire(word, outer))}


def test_growth_is_strict_when_both_indices_positive():
    for word in SIGMA4 + SIGMA5:
        if ind(word, "A") * ind(word, "D") == 0:
            continue
        n = word.rank
        assert any(path_count(word) > path_count(contract(word, b)) + n for b in "AD")


@given(st.sampled_from(SIGMA5), st.data())
def test_two_moves_transpose_coordinates(word, data):
    q = data.draw(st.integers(1, len(word) - 1))
    if abs(word[q - 1] - word[q]) <= 1:
        return
    moved = two_move(word, q)
    swap = [tuple(c[:q - 1] + (c[q], c[q - 1]) + c[q + 1:]) for c in (p.coeffs for p in all_paths(word))]
    assert sorted(swap) == sorted(p.coeffs for p in all_paths(moved))
