"""Rigorous paths on oriented wiring diagrams and the canonical D/A paths.

A level-``k`` path starts at the lower end of wire ``k`` and must finish at
the lower end of wire ``k+1``.  Wires ``1..k`` are travelled upward and the
rest downward.  At a node the path may hop onto the other wire or go straight
on.  Going straight on is forbidden where the crossing wire has the same
orientation and a higher index (upward) or a lower index (downward).  Every hop ``r -> s`` contributes ``+1`` (``r < s``) or ``-1``
(``r > s``) to the coefficient of its node.

>>> from .words import ReducedWord
>>> w = ReducedWord.parse("2,1,3,2,3,1")
>>> [p.node_expression() for p in enumerate_paths(w, 2)][:2]
['L2 -> t1 -> L3', 'L2 -> t3 -> t4 -> t2 -> L3']
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .wiring import WiringDiagram, build_diagram
from .words import DomainError, ReducedWord, _check_bullet

__all__ = [
    "RigorousPath", "enumerate_paths", "all_paths", "path_count",
    "canonical_path", "is_new", "check_rigorous",
]


@dataclass(frozen=True)
class RigorousPath:
    k: int
    switch_nodes: tuple[int, ...]
    wires: tuple[int, ...]
    coeffs: tuple[int, ...]

    def node_expression(self) -> str:
        inner = [f"t{j}" for j in self.switch_nodes]
        return " -> ".join([f"L{self.k}", *inner, f"L{self.k + 1}"])

    def wire_expression(self) -> str:
        return " -> ".join(f"l{w}" for w in self.wires)


def _coeffs(total: int, wires, switches) -> tuple[int, ...]:
    c = [0] * total
    for j, r, s in zip(switches, wires, wires[1:]):
        c[j - 1] += 1 if r < s else -1
    return tuple(c)


def _index_maps(diagram: WiringDiagram) -> dict[tuple[int, int], int]:
    where = {}
    for m, it in enumerate(diagram.itineraries, start=1):
        for pos, j in enumerate(it):
            where[(m, j)] = pos
    return where


def _blocked(wire: int, other: int, k: int) -> bool:
    """True if a path on ``wire`` may not pass straight over ``other``."""
    up = wire <= k
    if (other <= k) != up:
        return False
    return wire < other if up else wire > other


def enumerate_paths(word: ReducedWord, k: int) -> list[RigorousPath]:
    """All rigorous paths of level ``k``, sorted by switch-node sequence."""
    if not 1 <= k <= word.rank:
        raise DomainError(f"level {k} outside 1..{word.rank}")
    return list(_enumerate(word, k))


@lru_cache(maxsize=8192)
def _enumerate(word: ReducedWord, k: int) -> tuple[RigorousPath, ...]:
    diagram = build_diagram(word)
    where = _index_maps(diagram)
    total = len(word)
    found: list[RigorousPath] = []
    visited: set[int] = set()
    wires = [k]
    switches: list[int] = []

    def travel(wire: int, pos: int) -> None:
        # we sit on ``wire`` at itinerary position ``pos`` (-1 or len = an end)
        it = diagram.itineraries[wire - 1]
        up = wire <= k
        nxt = pos + 1 if up else pos - 1
        if nxt < 0:
            if wire == k + 1:
                found.append(RigorousPath(k, tuple(switches), tuple(wires),
                                          _coeffs(total, wires, switches)))
            return
        if nxt >= len(it):
            return
        j = it[nxt]
        if j in visited:
            return
        visited.add(j)
        other = diagram.node(j).other(wire)
        if not _blocked(wire, other, k):
            travel(wire, nxt)
        wires.append(other)
        switches.append(j)
        travel(other, where[(other, j)])
        switches.pop()
        wires.pop()
        visited.discard(j)

    travel(k, -1)
    found.sort(key=lambda p: p.switch_nodes)
    return tuple(found)


def all_paths(word: ReducedWord) -> list[RigorousPath]:
    out = []
    for k in range(1, word.rank + 1):
        out.extend(_enumerate(word, k))
    return out


def path_count(word: ReducedWord) -> int:
    return sum(len(_enumerate(word, k)) for k in range(1, word.rank + 1))


def check_rigorous(word: ReducedWord, path: RigorousPath) -> bool:
    """Independent membership test: walk ``path`` and check every rule."""
    diagram = build_diagram(word)
    k = path.k
    if path.wires[0] != k or path.wires[-1] != k + 1:
        return False
    if len(path.wires) != len(path.switch_nodes) + 1:
        return False
    seen: set[int] = set()
    wire, pending = k, list(path.switch_nodes)
    nodes = list(diagram.itinerary(wire))
    pos = 0  # index into ``nodes`` of the next node on the way
    for nxt_wire in path.wires[1:]:
        target = pending.pop(0)
        while True:
            if pos >= len(nodes):
                return False
            j = nodes[pos]
            if j in seen:
                return False
            seen.add(j)
            other = diagram.node(j).other(wire)
            if j == target:
                if other != nxt_wire:
                    return False
                break
            if _blocked(wire, other, k):
                return False
            pos += 1
        wire = nxt_wire
        it = list(diagram.itinerary(wire))
        at = it.index(target)
        nodes = it[at + 1:] if wire <= k else it[:at][::-1]
        pos = 0
    if wire <= k:
        return False
    for j in nodes:
        if j in seen or _blocked(wire, diagram.node(j).other(wire), k):
            return False
        seen.add(j)
    return True


# ----------------------------------------------------------------------------
# canonical paths


def _segment_nodes(diagram, where, wire, start, end, up):
    """Nodes of ``wire`` strictly after itinerary position ``start`` up to ``end``."""
    it = diagram.itinerary(wire)
    if up:
        return [it[p] for p in range(start + 1, end + 1)]
    return [it[p] for p in range(start - 1, end - 1, -1)]


def _grow(diagram, where, wires, switches, peak, up):
    """Insert ever larger wires that cross the current chain.

    ``wires``/``switches`` describe a chain in travel order.  Going up, the
    chain starts at the bottom end of its first wire and stops at ``peak`` on
    its last wire.  Going down, it starts where its first wire meets the last
    wire of the diagram and runs to the bottom.
    """
    n = diagram.rank
    while True:
        cov: set[int] = set()
        entry = None
        for step, wire in enumerate(wires):
            if entry is None:
                start = -1 if up else where[(wire, diagram.crossing(wire, n + 1))]
            else:
                start = entry
            if step < len(switches):
                stop = where[(wire, switches[step])]
                entry = where[(wires[step + 1], switches[step])]
            else:
                stop = where[(wire, peak)] - 1 if up else 0
            cov.update(_segment_nodes(diagram, where, wire, start, stop, up))
        cands = [w for j in cov for w in diagram.node(j).wires
                 if w not in wires and wires[0] < w <= n]
        if not cands:
            return wires, switches
        r = min(cands)
        it = diagram.itinerary(r)
        if up:
            order = it
        else:
            order = [it[p] for p in range(where[(r, diagram.crossing(r, n + 1))] - 1, -1, -1)]
        contact = next(j for j in order if j in cov)
        m = wires.index(diagram.node(contact).other(r))
        wires = [r] + wires[m:]
        switches = [contact] + switches[m:]


def canonical_path(word: ReducedWord, k: int, bullet: str) -> RigorousPath:
    """The D- or A-canonical path through the crossing with the outer wire."""
    _check_bullet(bullet)
    n = word.rank
    if not 1 <= k <= n:
        raise DomainError(f"level {k} outside 1..{n}")
    if bullet == "A":
        mirrored = _canonical_d(word.mirror(), n + 1 - k)
        return _mirror_path(mirrored, n, len(word))
    return _canonical_d(word, k)


def _canonical_d(word: ReducedWord, k: int) -> RigorousPath:
    diagram = build_diagram(word)
    where = _index_maps(diagram)
    n = word.rank
    peak = diagram.crossing(k, n + 1)
    first_w, first_s = _grow(diagram, where, [k], [], peak, True)
    level = first_w[0]
    first_s = first_s + [peak]
    s1 = level + 1
    if s1 == n + 1:
        second_w, second_s = [n + 1], []
    else:
        q_w, q_s = _grow(diagram, where, [s1], [], None, False)
        second_w = [n + 1] + q_w
        second_s = [diagram.crossing(q_w[0], n + 1)] + q_s
    wires = tuple(first_w + second_w)
    switches = tuple(first_s + second_s)
    return RigorousPath(level, switches, wires, _coeffs(len(word), wires, switches))


def _mirror_path(path: RigorousPath, n: int, total: int) -> RigorousPath:
    wires = tuple(n + 2 - w for w in reversed(path.wires))
    switches = tuple(reversed(path.switch_nodes))
    return RigorousPath(n + 1 - path.k, switches, wires, _coeffs(total, wires, switches))


def is_new(path: RigorousPath, word: ReducedWord, bullet: str) -> bool:
    """True when some switch node lies on wire n+1 (D) or wire 1 (A)."""
    _check_bullet(bullet)
    diagram = build_diagram(word)
    outer = word.rank + 1 if bullet == "D" else 1
    return any(outer in diagram.node(j).wires for j in path.switch_nodes)
