"""String cones, lambda-cones and string polytopes as exact inequality systems.

Every form means ``const + coeffs . t >= 0``.  The constant is an integer
vector over ``(1, lambda_1, ..., lambda_n)`` so that systems can stay
weight-symbolic; a system whose constants have length one is numeric.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .paths import all_paths
from .wiring import ChamberBasis, lambda_row
from .words import DomainError, ReducedWord, layout_index, sigma_of_layout

__all__ = [
    "Weight", "LinearForm", "HPolyhedron",
    "string_cone", "lambda_cone", "string_polytope", "to_chamber_coordinates",
    "lambda_functional",
]


@dataclass(frozen=True)
class Weight:
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if any(c < 0 for c in self.coefficients):
            raise DomainError(f"weight {self.coefficients} is not dominant")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        try:
            values = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
        except ValueError:
            raise DomainError(f"malformed weight {text!r}") from None
        return cls(values)

    @classmethod
    def fundamental(cls, i: int, n: int, multiple: int = 1) -> "Weight":
        return cls(tuple(multiple if j == i else 0 for j in range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    @property
    def regular(self) -> bool:
        return all(c > 0 for c in self.coefficients)

    def __str__(self) -> str:
        return ",".join(map(str, self.coefficients))


def _scalar(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple
    const: tuple = (0,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_scalar(c) for c in self.coeffs))
        object.__setattr__(self, "const", tuple(_scalar(c) for c in self.const))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def symbolic(self) -> bool:
        return len(self.const) > 1

    def constant(self, weight: Weight | None = None):
        if not self.symbolic:
            return self.const[0]
        if weight is None:
            raise DomainError("a weight is needed to evaluate a symbolic form")
        if weight.rank != len(self.const) - 1:
            raise DomainError(f"weight of rank {weight.rank} for a rank-{len(self.const) - 1} form")
        return self.const[0] + sum(c * w for c, w in zip(self.const[1:], weight.coefficients))

    def instantiate(self, weight: Weight | None) -> "LinearForm":
        if not self.symbolic:
            return self
        return LinearForm(self.coeffs, (self.constant(weight),))

    def value(self, t: Sequence, weight: Weight | None = None):
        return self.constant(weight) + sum(a * x for a, x in zip(self.coeffs, t))

    def normalized(self) -> "LinearForm":
        """Positive rescaling to primitive integer entries."""
        entries = [Fraction(x) for x in self.coeffs + self.const]
        den = 1
        for x in entries:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in entries]
        g = 0
        for x in ints:
            g = gcd(g, x)
        g = g or 1
        ints = [x // g for x in ints]
        return LinearForm(tuple(ints[:self.dim]), tuple(ints[self.dim:]))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        size = max(len(self.const), len(other.const))
        a = self.const + (0,) * (size - len(self.const))
        b = other.const + (0,) * (size - len(other.const))
        return LinearForm(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)),
                          tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-x for x in self.coeffs), tuple(-x for x in self.const))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, factor) -> "LinearForm":
        return LinearForm(tuple(factor * x for x in self.coeffs), tuple(factor * x for x in self.const))

    def pretty(self, var: str = "t") -> str:
        parts = []
        names = ["1"] + [f"lambda{i}" for i in range(1, len(self.const))]
        terms = [(c, f"{var}{j}") for j, c in enumerate(self.coeffs, start=1)]
        terms += [(c, names[i]) for i, c in enumerate(self.const)]
        for c, name in terms:
            if c == 0:
                continue
            mag = abs(c)
            body = str(mag) if name == "1" else (name if mag == 1 else f"{mag}{name}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return (" ".join(parts) or "0") + " >= 0"

    def to_json(self) -> dict:
        from .polyhedra import fraction_str

        def enc(x):
            return x if isinstance(x, int) else fraction_str(x)
        return {"coeffs": [enc(c) for c in self.coeffs],
                "const": {"one": enc(self.const[0]), "lambda": [enc(c) for c in self.const[1:]]}}


@dataclass(frozen=True)
class HPolyhedron:
    dim: int
    forms: tuple[LinearForm, ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        forms, labels, seen = [], [], set()
        raw_labels = self.labels or ("",) * len(self.forms)
        for f, lab in zip(self.forms, raw_labels):
            if f.dim != self.dim:
                raise DomainError(f"form of dimension {f.dim} in a {self.dim}-dimensional system")
            key = f.normalized()
            if key in seen:
                continue
            seen.add(key)
            forms.append(f)
            labels.append(lab)
        object.__setattr__(self, "forms", tuple(forms))
        object.__setattr__(self, "labels", tuple(labels))

    def __len__(self) -> int:
        return len(self.forms)

    @property
    def symbolic(self) -> bool:
        return any(f.symbolic for f in self.forms)

    def instantiate(self, weight: Weight | None) -> "HPolyhedron":
        return HPolyhedron(self.dim, tuple(f.instantiate(weight) for f in self.forms), self.labels)

    def rows(self) -> list[tuple]:
        if self.symbolic:
            raise DomainError("instantiate the weight before numeric processing")
        return [(f.const[0],) + f.coeffs for f in self.forms]

    def select(self, indices: Sequence[int]) -> "HPolyhedron":
        return HPolyhedron(self.dim, tuple(self.forms[i] for i in indices),
                           tuple(self.labels[i] for i in indices))

    def __or__(self, other: "HPolyhedron") -> "HPolyhedron":
        return HPolyhedron(self.dim, self.forms + other.forms, self.labels + other.labels)

    def to_json(self) -> dict:
        return {"dim": self.dim, "forms": [f.to_json() for f in self.forms]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def string_cone(word: ReducedWord) -> HPolyhedron:
    """One homogeneous form per rigorous path."""
    paths = all_paths(word)
    return HPolyhedron(len(word), tuple(LinearForm(p.coeffs) for p in paths),
                       tuple(f"string:{p.node_expression()}" for p in paths))


def lambda_cone(word: ReducedWord, weight: Weight | None = None) -> HPolyhedron:
    """The upper bounds ``t_j <= lambda_{i_j} + sum_{k>j} a_k t_k``.

    With ``weight=None`` the constants stay symbolic in lambda.
    """
    n = word.rank
    if weight is not None and weight.rank != n:
        raise DomainError(f"weight of rank {weight.rank} for a rank-{n} word")
    forms, labels = [], []
    for j in range(1, len(word) + 1):
        coeffs = list(lambda_row(word, j))
        coeffs[j - 1] = -1
        const = [0] * (n + 1)
        const[word[j - 1]] = 1
        forms.append(LinearForm(tuple(coeffs), tuple(const)))
        labels.append(f"lambda:t{j}")
    cone = HPolyhedron(len(word), tuple(forms), tuple(labels))
    return cone if weight is None else cone.instantiate(weight)


def string_polytope(word: ReducedWord, weight: Weight | None = None) -> HPolyhedron:
    cone = string_cone(word)
    if weight is not None:
        cone = cone.instantiate(weight)
    return cone | lambda_cone(word, weight)


def to_chamber_coordinates(poly: HPolyhedron, basis: ChamberBasis) -> HPolyhedron:
    """Rewrite every form in chamber variables ``u``."""
    if len(basis.forward) != poly.dim:
        raise DomainError("chamber basis and system have different dimensions")
    forms = tuple(LinearForm(basis.rewrite(f.coeffs), f.const) for f in poly.forms)
    return HPolyhedron(poly.dim, forms, poly.labels)


def lambda_functional(word_or_sigma, k: int, j: int) -> LinearForm:
    """``S_{k,j}``: the variable part of the lambda-bound of node ``t_{k,j}``.

    The word must be built by extensions at 0 (blocks of lengths 1, ..., n);
    ``t_{k,j}`` is the ``j``-th letter of block ``k``.
    """
    if isinstance(word_or_sigma, ReducedWord):
        word = word_or_sigma
        sigma_of_layout(word)  # raises LayoutError when the layout is wrong
    else:
        from .words import sigma_word
        word = sigma_word(word_or_sigma)
    if not 1 <= j <= k <= word.rank:
        raise DomainError(f"no node t_({k},{j}) in rank {word.rank}")
    idx = layout_index(k, j)
    coeffs = list(lambda_row(word, idx))
    coeffs[idx - 1] = -1
    return LinearForm(tuple(coeffs))
