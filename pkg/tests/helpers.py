"""Independent helpers shared by the tests."""

from stringpoly.wiring import build_diagram
from stringpoly.words import ReducedWord


def kept_nodes(word, wire):
    """Indices of the nodes that do not lie on ``wire``, in order."""
    return [node.index for node in build_diagram(word).nodes if wire not in node.wires]


def delete_wire(word, wire):
    """Word of the diagram with one boundary wire removed (independent route)."""
    diagram = build_diagram(word)
    n = word.rank
    kept = [node for node in diagram.nodes if wire not in node.wires]
    # simulate the remaining wires bottom-up, reading columns off positions
    order = [m for m in diagram.bottom_order if m != wire]
    letters = {}
    for node in sorted(kept, key=lambda nd: -nd.index):
        a, b = node.wires
        pa, pb = order.index(a), order.index(b)
        lo = min(pa, pb)
        letters[node.index] = n - 1 - lo
        order[pa], order[pb] = order[pb], order[pa]
    return ReducedWord(n - 1, tuple(letters[j] for j in sorted(letters)))
