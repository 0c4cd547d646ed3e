import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stringpoly.polyhedra.linalg import solve
from stringpoly.inequalities import (
    HPolyhedron, LinearForm, Weight, lambda_cone, lambda_functional, string_cone, string_polytope,
    to_chamber_coordinates,
)
from stringpoly.wiring import chamber_basis
from stringpoly.words import DomainError, LayoutError, ReducedWord, enumerate_reduced_words, sigma_word

W = ReducedWord.parse
SIGMA4 = enumerate_reduced_words(3)


def test_weight_parsing_and_flags():
    w = Weight.parse("2, 0,1")
    assert w.coefficients == (2, 0, 1) and w.rank == 3 and not w.regular
    assert Weight.fundamental(3, 5, 2).coefficients == (0, 0, 2, 0, 0)
    with pytest.raises(DomainError):
        Weight.parse("1,-1")
    with pytest.raises(DomainError):
        Weight.parse("1,x")


def test_lambda_forms_of_standard_word():
    cone = lambda_cone(W("1,2,1,3,2,1"))
    got = [(f.coeffs, f.const) for f in cone.forms]
    assert got == [
        ((-1, 1, -2, 0, 1, -2), (0, 1, 0, 0)),
        ((0, -1, 1, 1, -2, 1), (0, 0, 1, 0)),
        ((0, 0, -1, 0, 1, -2), (0, 1, 0, 0)),
        ((0, 0, 0, -1, 1, 0), (0, 0, 0, 1)),
        ((0, 0, 0, 0, -1, 1), (0, 0, 1, 0)),
        ((0, 0, 0, 0, 0, -1), (0, 1, 0, 0)),
    ]
    assert cone.forms[0].pretty() == "-t1 + t2 - 2t3 + t5 - 2t6 + lambda1 >= 0"


def test_rank_one_lambda_form():
    (form,) = lambda_cone(W("1"), Weight((3,))).forms
    assert form.coeffs == (-1,) and form.const == (3,)


@pytest.mark.parametrize("word", SIGMA4, ids=str)
def test_lambda_coefficients_follow_columns(word):
    for j, form in enumerate(lambda_cone(word).forms, start=1):
        for k in range(1, len(word) + 1):
            gap = abs(word[k - 1] - word[j - 1])
            want = -1 if k == j else 0 if k < j else {0: -2, 1: 1}.get(gap, 0)
            assert form.coeffs[k - 1] == want


def test_string_cone_of_rank_two():
    cone = string_cone(W("1,2,1"))
    assert sorted(f.coeffs for f in cone.forms) == sorted([(1, 0, 0), (0, 1, -1), (0, 0, 1)])


def test_string_polytope_is_concatenation():
    word = W("2,1,3,2,3,1")
    poly = string_polytope(word, Weight((1, 1, 1)))
    assert len(poly) == 13
    assert poly.labels[0].startswith("string:") and poly.labels[-1] == "lambda:t6"


def test_symbolic_then_instantiated():
    word = W("1,2,1")
    sym = string_polytope(word)
    assert sym.symbolic
    with pytest.raises(DomainError):
        sym.rows()
    rows = sym.instantiate(Weight((2, 3))).rows()
    assert (2, -1, 1, -2) in rows and (3, 0, -1, 1) in rows


def test_duplicates_removed_after_scaling():
    f = LinearForm((1, -1), (0,))
    poly = HPolyhedron(2, (f, f.scale(3), LinearForm((0, 1))))
    assert len(poly) == 2


def test_json_schema():
    data = json.loads(string_polytope(W("1,2,1")).dumps())
    assert data["dim"] == 3
    form = data["forms"][-1]
    assert form == {"coeffs": [0, 0, -1], "const": {"one": 0, "lambda": [1, 0]}}
    half = LinearForm((1, -2), (3,)).scale(Fraction(1, 2)).to_json()
    assert half == {"coeffs": ["1/2", -1], "const": {"one": "3/2", "lambda": []}}


def test_chamber_rewrite_keeps_constants():
    word = W("2,1,3,2,3,1")
    rewritten = to_chamber_coordinates(lambda_cone(word), chamber_basis(word))
    assert rewritten.forms[0].const == lambda_cone(word).forms[0].const
    assert to_chamber_coordinates(string_cone(word), chamber_basis(word)).forms[0].const == (0,)
    with pytest.raises(DomainError):
        to_chamber_coordinates(string_cone(W("1,2,1")), chamber_basis(word))


def test_lambda_functionals_of_rank_two():
    word = W("1,2,1")
    assert lambda_functional(word, 1, 1).coeffs == (-1, 1, -2)
    assert lambda_functional(word, 2, 1).coeffs == (0, -1, 1)
    assert lambda_functional(word, 2, 2).coeffs == (0, 0, -1)


@pytest.mark.parametrize("sigma", list(itertools.product("AD", repeat=4)), ids="".join)
def test_last_block_functionals(sigma):
    n = len(sigma)
    word = sigma_word(sigma)
    for j in range(1, n + 1):
        want = [0] * len(word)
        base = n * (n - 1) // 2
        want[base + j - 1] = -1
        if j < n:
            want[base + j] = 1
        assert lambda_functional(word, n, j).coeffs == tuple(want)


def test_functional_needs_extension_layout():
    with pytest.raises(LayoutError):
        lambda_functional(W("2,1,3,2,3,1"), 1, 1)


@given(st.sampled_from(SIGMA4), st.tuples(*[st.integers(1, 3)] * 3))
def test_origin_and_apex_are_strictly_inside(word, lam):
    weight = Weight(lam)
    for form in lambda_cone(word, weight).forms:
        assert form.value((0,) * 6) > 0
    # apex of the lambda-cone: every lambda-bound tight
    lam_forms = lambda_cone(word, weight).forms
    apex = solve([f.coeffs for f in lam_forms], [-f.const[0] for f in lam_forms])
    for form in string_cone(word).forms:
        assert form.value(apex) > 0
