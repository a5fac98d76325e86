"""Named example structures and diagrams used by the CLI and the test suite.

Diagrams are added further down in this module as builders; everything is
constructed fresh on each call so callers may mutate results freely.
"""

from __future__ import annotations

from .diagrams import HEAD, TAIL, Crossing, Diagram, Edge, MarkedVertex
from .tables import Biquandle, alexander_biquandle, dihedral_quandle, trivial_biquandle


def cyclic_order4_biquandle():
    """Order 4 biquandle whose over operation cycles the three nonzero colors.

    Not of Alexander form; distinguishes orientations of twisted sphere pairs
    in the state sum computations below, which is why it earns a name.
    """
    under = [
        [0, 3, 1, 2],
        [1, 2, 0, 3],
        [2, 1, 3, 0],
        [3, 0, 2, 1],
    ]
    over = [
        [0, 0, 0, 0],
        [2, 2, 2, 2],
        [3, 3, 3, 3],
        [1, 1, 1, 1],
    ]
    return Biquandle(under, over).require_valid()


NAMED_BIQUANDLES = {
    "trivial1": lambda: trivial_biquandle(1),
    "trivial2": lambda: trivial_biquandle(2),
    "trivial3": lambda: trivial_biquandle(3),
    "dihedral3": lambda: dihedral_quandle(3),
    "dihedral5": lambda: dihedral_quandle(5),
    "alexander4_3_1": lambda: alexander_biquandle(4, 3, 1),
    "cyclic4": cyclic_order4_biquandle,
}


def named_biquandle(name):
    try:
        return NAMED_BIQUANDLES[name]()
    except KeyError:
        raise ValueError(f"unknown biquandle name {name!r}") from None


def braid_closure(word, strands):
    """Closure of a braid word as a link diagram.

    Letters are nonzero integers: letter i crosses positions i-1 and i
    (0-based), positive when the strand entering from the left goes over.
    Strands run upward; the four ends of each crossing sit at the compass
    points NE, NW, SW, SE, which is also the counterclockwise order used
    for its rotation table.  A position no letter touches closes into a
    free loop.
    """
    for letter in word:
        if letter == 0 or abs(letter) >= strands:
            raise ValueError(f"letter {letter} out of range for "
                             f"{strands} strands")
    recs = {}
    first = [None] * strands
    open_edge = [None] * strands
    next_edge = 1
    nodes = []

    def fresh():
        nonlocal next_edge
        eid = next_edge
        next_edge += 1
        recs[eid] = [None, None]
        return eid

    for nid, letter in enumerate(word, start=1):
        p = abs(letter) - 1
        for q in (p, p + 1):
            if open_edge[q] is None:
                open_edge[q] = first[q] = fresh()
        in_left, in_right = open_edge[p], open_edge[p + 1]
        out_left, out_right = fresh(), fresh()
        # ccw [NE, NW, SW, SE]; ins arrive from below at SW and SE
        recs[in_left][1] = (nid, 2)
        recs[in_right][1] = (nid, 3)
        recs[out_left][0] = (nid, 1)
        recs[out_right][0] = (nid, 0)
        ccw = [(out_right, TAIL), (out_left, TAIL),
               (in_left, HEAD), (in_right, HEAD)]
        nodes.append(Crossing(nid, ccw, over_in=2 if letter > 0 else 3))
        open_edge[p], open_edge[p + 1] = out_left, out_right
    free_loops = 0
    remap = {}
    for p in range(strands):
        if open_edge[p] is None:
            free_loops += 1
            continue
        f, g = first[p], open_edge[p]
        recs[f][0] = recs[g][0]
        remap[g] = f
        del recs[g]
    edges = [Edge(eid, recs[eid][0], recs[eid][1]) for eid in sorted(recs)]
    fixed = []
    for node in nodes:
        ccw = [(remap.get(eid, eid), which) for eid, which in node.ccw]
        fixed.append(Crossing(node.id, ccw, node.over_in))
    return Diagram(edges, fixed, free_loops).require_valid()


def bowtie_sphere():
    """Marked graph diagram of an unknotted sphere: a single marked vertex
    whose positive resolution is a 2-component unlink and whose negative
    resolution is an unknot."""
    v = 1
    e1 = Edge(1, (v, 1), (v, 0))
    e2 = Edge(2, (v, 3), (v, 2))
    vertex = MarkedVertex(v, [(1, HEAD), (1, TAIL), (2, HEAD), (2, TAIL)],
                          marker=0)
    return Diagram([e1, e2], [vertex]).require_valid()


NAMED_DIAGRAMS = {
    "unknot0": lambda: Diagram([], [], free_loops=1),
    "unlink2": lambda: braid_closure([], strands=2),
    "kink_plus": lambda: braid_closure([1], strands=2),
    "kink_minus": lambda: braid_closure([-1], strands=2),
    "hopf": lambda: braid_closure([1, 1], strands=2),
    "trefoil": lambda: braid_closure([1, 1, 1], strands=2),
    "figure_eight": lambda: braid_closure([1, -2, 1, -2], strands=3),
    "solomon": lambda: braid_closure([1, 1, 1, 1], strands=2),
    "five_one": lambda: braid_closure([1, 1, 1, 1, 1], strands=2),
    "bowtie_sphere": bowtie_sphere,
}


def named_diagram(name):
    try:
        return NAMED_DIAGRAMS[name]()
    except KeyError:
        raise ValueError(f"unknown diagram name {name!r}") from None
