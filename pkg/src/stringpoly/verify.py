"""Self-verification suite behind ``stringpoly verify``.

Each criterion returns a :class:`Result`.  Worked-example criteria compare
against ``data/golden.json`` and list every mismatch; the others compare two
independent computations (for instance lattice points against the Weyl
dimension formula).
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from .gc import (
    build_map, classify, gc_polytope, lambda_recursion_holds, map_forms, weight_gap_holds,
    x_recursion_holds,
)
from .inequalities import LinearForm, Weight, lambda_cone, string_polytope
from .oracle import weyl_dimension
from .paths import canonical_path, enumerate_paths, path_count
from .polyhedra import (
    BudgetExceeded, is_integral, lattice_point_count, probe_vertices, vertices, volume,
)
from .wiring import chamber_basis
from .words import ReducedWord, contract, enumerate_reduced_words, ind, parse_sigma

__all__ = ["Result", "CRITERIA", "QUICK", "FULL", "load_golden", "run"]


@dataclass
class Result:
    name: str
    passed: bool
    seconds: float = 0.0
    limit: float | None = None
    diffs: list[str] = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.note})" if self.note else ""
        return f"{self.name} {status} {self.seconds:.2f}s{extra}"

    def to_json(self) -> dict:
        return {"criterion": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "limit": self.limit, "diffs": self.diffs, "note": self.note}


def load_golden(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("stringpoly").joinpath("data/golden.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def _diff(diffs: list[str], key: str, expected, actual) -> None:
    if expected != actual:
        diffs.append(f"{key}: expected {expected}, got {actual}")


def _frac(x) -> Fraction:
    return Fraction(x)


# ----------------------------------------------------------------------------
# worked examples


def check_a1(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    for text, levels in golden["string_cones"].items():
        word = ReducedWord.parse(text)
        for k, forms in levels.items():
            got = sorted(p.coeffs for p in enumerate_paths(word, int(k)))
            _diff(diffs, f"{text} k={k}", sorted(tuple(f) for f in forms), got)
    return diffs, ""


def check_a2(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    case = golden["lambda_forms"]
    cone = lambda_cone(ReducedWord.parse(case["word"]))
    for j, (form, want) in enumerate(zip(cone.forms, case["forms"]), start=1):
        _diff(diffs, f"t{j}", (tuple(want["coeffs"]), (0, *want["lambda"])), (form.coeffs, form.const))
    _diff(diffs, "form count", len(case["forms"]), len(cone.forms))
    return diffs, ""


def check_a3(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    case = golden["chamber_identities"]
    basis = chamber_basis(ReducedWord.parse(case["word"]))
    for i, row in enumerate(case["rows"]):
        got = basis.rewrite(row["node"])
        _diff(diffs, f"row {i}", tuple(row["chamber"]), tuple(got))
    return diffs, ""


def check_a4(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    case = golden["contraction_chain"]
    word = ReducedWord.parse(case["word"])
    for depth, want in enumerate(case["chain"], start=1):
        word = contract(word, case["bullet"])
        _diff(diffs, f"C^{depth}", want, str(word))
    for row in golden["indices"]:
        w = ReducedWord.parse(row["word"])
        _diff(diffs, f"ind {row['word']}", (row["A"], row["D"]), (ind(w, "A"), ind(w, "D")))
    return diffs, ""


def check_a5(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    case = golden["canonical_paths"]
    word = ReducedWord.parse(case["word"])
    for k, wires in case["wires"].items():
        got = canonical_path(word, int(k), case["bullet"]).wires
        _diff(diffs, f"P_{case['bullet']}({k})", tuple(wires), got)
    return diffs, ""


def check_a8(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    fig = golden["figure_vertices"]
    weight = Weight(tuple(fig["weight"]))
    order = fig["gc_coordinates"].split(",")
    layout = ["x11", "x21", "x22"]
    gc_verts = sorted(tuple(_frac(p[order.index(name)]) for name in layout) for p in fig["gc"])
    gc_poly = gc_polytope(2, weight)
    _diff(diffs, "GC vertices", gc_verts, vertices(gc_poly).sorted_vertices())
    word = ReducedWord.parse(fig["string_word"])
    poly = string_polytope(word, weight)
    want = sorted(tuple(map(_frac, p)) for p in fig["string"])
    _diff(diffs, "string vertices", want, vertices(poly).sorted_vertices())
    vol = Fraction(fig["volume"])
    _diff(diffs, "GC volume", vol, volume(gc_poly))
    _diff(diffs, "string volume", vol, volume(poly))

    case = golden["gc_map"]
    sigma = parse_sigma(case["sigma"])
    matrix, shift = build_map(sigma)
    _diff(diffs, "M", [tuple(r) for r in case["matrix"]], [tuple(r) for r in matrix])
    _diff(diffs, "v", [tuple(c) for c in case["shift"]], [tuple(c) for c in shift])
    forms = map_forms(sigma)
    for i, (want_form, got) in enumerate(zip(case["image"], forms)):
        want_lf = LinearForm(tuple(want_form["coeffs"]), (0, *want_form["lambda"]))
        _diff(diffs, f"image row {i}", want_lf, got)
    return diffs, ""


# ----------------------------------------------------------------------------
# property criteria


def check_a6(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    rows = classify(3, Weight((1, 1, 1)))
    _diff(diffs, "class count", 8, len(rows))
    for row in rows:
        if not row.consistent:
            diffs.append(f"class {row.canonical}: paths={row.path_count} facets={row.facets} "
                         f"gc_type={row.gc_type} map={row.map_verified}")
    gc_rows = sum(r.gc_type is not None for r in rows)
    return diffs, f"{gc_rows} of {len(rows)} classes GC-type"


def check_a7(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    words = enumerate_reduced_words(3)
    for lam in [(1, 1, 1), (2, 1, 1), (1, 2, 3)]:
        expect = weyl_dimension(3, lam)
        for word in words:
            got = lattice_point_count(string_polytope(word, Weight(lam)))
            _diff(diffs, f"{word} lambda={lam}", expect, got)
    return diffs, f"{len(words)} words, 3 weights"


def check_a9(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    words = enumerate_reduced_words(3)
    for lam in [(1, 1, 1), (2, 1, 1)]:
        weight = Weight(lam)
        expect = volume(gc_polytope(3, weight))
        for word in words:
            _diff(diffs, f"{word} lambda={lam}", expect, volume(string_polytope(word, weight)))
    return diffs, ""


def check_a10(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    checks = [("weight gap", weight_gap_holds), ("lambda recursion", lambda_recursion_holds),
              ("x recursion", x_recursion_holds)]
    count = 0
    for n in range(1, 5):
        for sigma in itertools.product("AD", repeat=n):
            count += 1
            for name, fn in checks:
                if not fn(sigma):
                    diffs.append(f"{name} fails for {''.join(sigma)}")
    return diffs, f"{count} sequences"


def check_a11(golden: dict) -> tuple[list[str], str]:
    diffs: list[str] = []
    count = 0
    for n in (3, 4):
        for word in enumerate_reduced_words(n):
            count += 1
            total = path_count(word)
            strict = False
            for bullet in ("A", "D"):
                smaller = path_count(contract(word, bullet))
                if total < smaller + n:
                    diffs.append(f"{word} {bullet}: {total} < {smaller} + {n}")
                strict |= total > smaller + n
            if ind(word, "A") * ind(word, "D") > 0 and not strict:
                diffs.append(f"{word}: no strict growth")
    return diffs, f"{count} words"


def check_a12(golden: dict, budget: float = 600.0) -> tuple[list[str], str]:
    diffs: list[str] = []
    case = golden["steinert"]
    word = ReducedWord.parse(case["word"])
    n = word.rank
    notes = []
    for mult, want_integral in ((1, False), (2, True)):
        weight = Weight.fundamental(case["fundamental"], n, mult)
        poly = string_polytope(word, weight)
        try:
            vrep = vertices(poly, budget=budget)
            integral = is_integral(vrep)
            notes.append(f"{mult}w: {len(vrep.vertices)} vertices")
        except BudgetExceeded:
            if want_integral:
                diffs.append(f"{mult}w: double description ran past its budget")
                continue
            found = probe_vertices(poly, trials=5000)
            integral = all(x.denominator == 1 for v in found for x in v)
            notes.append(f"{mult}w: probing")
        _diff(diffs, f"{mult}w integral", want_integral, integral)
    return diffs, "; ".join(notes)


CRITERIA: dict[str, tuple[Callable, float]] = {
    "A1": (check_a1, 1.0),
    "A2": (check_a2, 1.0),
    "A3": (check_a3, 1.0),
    "A4": (check_a4, 1.0),
    "A5": (check_a5, 1.0),
    "A6": (check_a6, 30.0),
    "A7": (check_a7, 120.0),
    "A8": (check_a8, 5.0),
    "A9": (check_a9, 120.0),
    "A10": (check_a10, 10.0),
    "A11": (check_a11, 300.0),
    "A12": (check_a12, 600.0),
}
QUICK = tuple(f"A{i}" for i in range(1, 9))
FULL = tuple(CRITERIA)


def run_one(name: str, golden: dict) -> Result:
    fn, limit = CRITERIA[name]
    start = time.perf_counter()
    try:
        diffs, note = fn(golden)
    except (KeyError, TypeError, ValueError) as exc:
        # a damaged golden file shows up here rather than as a crash
        diffs, note = [f"error: {type(exc).__name__}: {exc}"], ""
    seconds = time.perf_counter() - start
    passed = not diffs and seconds <= limit
    if not diffs and seconds > limit:
        note = (note + "; " if note else "") + f"over the {limit:g}s limit"
    return Result(name, passed, seconds, limit, diffs, note)


def run(level: str = "quick", golden_path: str | Path | None = None,
        only: tuple[str, ...] | None = None) -> list[Result]:
    golden = load_golden(golden_path)
    names = only or (QUICK if level == "quick" else FULL)
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise ValueError(f"unknown criteria: {', '.join(unknown)}")
    return [run_one(name, golden) for name in names]
