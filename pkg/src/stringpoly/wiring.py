"""Wiring diagrams of reduced words and the chamber change of variables.

Wires are numbered by their position on the bottom boundary, left to right.
Nodes are numbered from the top: node ``j`` is the crossing contributed by
letter ``i_j``, so node ``N`` is the lowest one.  Reading the diagram from the
bottom upward, a node in column ``c`` swaps the wires that currently sit at
positions ``n+1-c`` and ``n+2-c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import DomainError, ReducedWord

__all__ = [
    "Node", "WiringDiagram", "OrientedDiagram", "ChamberBasis",
    "build_diagram", "orient", "nodes_below_wire", "lambda_row", "chamber_basis",
]


@dataclass(frozen=True)
class Node:
    index: int
    column: int
    wires: tuple[int, int]  # sorted pair

    def other(self, wire: int) -> int:
        a, b = self.wires
        if wire == a:
            return b
        if wire == b:
            return a
        raise ValueError(f"wire {wire} does not pass through node {self.index}")


@dataclass(frozen=True)
class WiringDiagram:
    word: ReducedWord
    nodes: tuple[Node, ...]
    # itineraries[m - 1] lists the nodes on wire m from its lower end upward
    itineraries: tuple[tuple[int, ...], ...]
    bottom_order: tuple[int, ...]
    top_order: tuple[int, ...]
    # positions[j - 1] is the lower of the two positions swapped at node j
    positions: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.word.rank

    def node(self, j: int) -> Node:
        return self.nodes[j - 1]

    def itinerary(self, wire: int) -> tuple[int, ...]:
        return self.itineraries[wire - 1]

    def crossing(self, a: int, b: int) -> int:
        """Index of the node where wires ``a`` and ``b`` meet."""
        key = (min(a, b), max(a, b))
        for node in self.nodes:
            if node.wires == key:
                return node.index
        raise DomainError(f"wires {a} and {b} do not cross")

    def dump(self) -> str:
        return "\n".join(
            f"{nd.index} {nd.column} {{{nd.wires[0]},{nd.wires[1]}}}" for nd in self.nodes)


@lru_cache(maxsize=4096)
def build_diagram(word: ReducedWord) -> WiringDiagram:
    n, total = word.rank, len(word)
    order = list(range(1, n + 2))  # order[p - 1] is the wire at position p
    pairs: list[tuple[int, int] | None] = [None] * total
    positions = [0] * total
    its: list[list[int]] = [[] for _ in range(n + 1)]
    for j in range(total, 0, -1):
        c = word[j - 1]
        p = n + 1 - c
        a, b = order[p - 1], order[p]
        pairs[j - 1] = (min(a, b), max(a, b))
        positions[j - 1] = p
        its[a - 1].append(j)
        its[b - 1].append(j)
        order[p - 1], order[p] = b, a
    nodes = tuple(Node(j, word[j - 1], pairs[j - 1]) for j in range(1, total + 1))
    return WiringDiagram(
        word=word,
        nodes=nodes,
        itineraries=tuple(tuple(x) for x in its),
        bottom_order=tuple(range(1, n + 2)),
        top_order=tuple(order),
        positions=tuple(positions),
    )


@dataclass(frozen=True)
class OrientedDiagram:
    diagram: WiringDiagram
    k: int

    def is_up(self, wire: int) -> bool:
        return wire <= self.k


def orient(diagram: WiringDiagram, k: int) -> OrientedDiagram:
    if not 1 <= k <= diagram.rank:
        raise DomainError(f"level {k} outside 1..{diagram.rank}")
    return OrientedDiagram(diagram, k)


def nodes_below_wire(diagram: WiringDiagram, wire: int) -> int:
    """Count nodes lying strictly on the lower side of wire 1 or wire n+1.

    Wire ``n+1`` starts at the right end and drifts left, so a node is below
    it when it happens to the right of its current position; wire 1 mirrors
    this.
    """
    n = diagram.rank
    if wire not in (1, n + 1):
        raise DomainError(f"only the outer wires 1 and {n + 1} are supported")
    q = 1 if wire == 1 else n + 1
    count = 0
    for j in range(len(diagram.nodes), 0, -1):
        p = diagram.positions[j - 1]
        if wire in diagram.node(j).wires:
            q = p + 1 if q == p else p
        elif (wire == n + 1 and q > p + 1) or (wire == 1 and q < p):
            count += 1
    return count


def lambda_row(word: ReducedWord, j: int) -> tuple[int, ...]:
    """Coefficients ``a_k`` of the upper bound ``t_j <= lambda + sum_{k>j} a_k t_k``.

    ``a_k`` is +1 for a neighbouring column, -2 for the same column and 0
    otherwise; entries with ``k <= j`` are zero.
    """
    c = word[j - 1]
    row = [0] * len(word)
    for k in range(j + 1, len(word) + 1):
        d = abs(word[k - 1] - c)
        if d == 0:
            row[k - 1] = -2
        elif d == 1:
            row[k - 1] = 1
    return tuple(row)


@dataclass(frozen=True)
class ChamberBasis:
    """``u = forward @ t`` and ``t = inverse @ u`` (rows indexed by nodes)."""

    forward: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    def rewrite(self, coeffs) -> tuple:
        """Coefficients in chamber variables of the form ``coeffs . t``."""
        n = len(self.inverse)
        return tuple(sum(coeffs[i] * self.inverse[i][m] for i in range(n)) for m in range(n))


def chamber_basis(word: ReducedWord) -> ChamberBasis:
    total = len(word)
    big_u = []
    for j in range(1, total + 1):
        row = [-a for a in lambda_row(word, j)]
        row[j - 1] = 1
        big_u.append(row)
    forward = []
    for j in range(1, total + 1):
        below = next((k for k in range(j + 1, total + 1) if word[k - 1] == word[j - 1]), None)
        row = list(big_u[j - 1])
        if below is not None:
            row = [x - y for x, y in zip(row, big_u[below - 1])]
        forward.append(tuple(row))
    return ChamberBasis(tuple(forward), _unit_upper_inverse(forward))


def _unit_upper_inverse(mat) -> tuple[tuple[int, ...], ...]:
    n = len(mat)
    for i in range(n):
        if mat[i][i] != 1 or any(mat[i][k] for k in range(i)):
            raise ValueError("matrix is not unit upper-triangular")
    inv = [[0] * n for _ in range(n)]
    for col in range(n):
        for i in range(n - 1, -1, -1):
            val = (1 if i == col else 0) - sum(mat[i][k] * inv[k][col] for k in range(i + 1, n))
            inv[i][col] = val
    return tuple(tuple(r) for r in inv)
