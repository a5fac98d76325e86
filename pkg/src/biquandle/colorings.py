"""Colorings of diagrams by a biquandle, and their shadow extensions.

A coloring assigns an element of X to every semi-arc (edge) so that the
two relations of each crossing and the four-way equality of each marked
vertex hold.  Crossingless circles are unconstrained, so a coloring also
carries one color per free loop; dropping them would break the bijection
between colorings before and after a move that creates or absorbs a
circle.

The solver propagates forced colors through nodes and branches only when
a crossing pins neither of its determined ends.  At a crossing with
source pair (a, b) (the under and over semi-arcs at the source region),
the other two ends carry under(a, b) and over(b, a); each of the four
axiom bijections inverts one of these, so knowing both derived ends, or
one end of each kind, forces the rest.
"""

from __future__ import annotations

from .diagrams import source_semiarcs


class Coloring:
    """Immutable semi-arc coloring; `loops` lists free-loop colors."""

    __slots__ = ("_edges", "loops")

    def __init__(self, edges, loops=()):
        self._edges = dict(edges)
        self.loops = tuple(loops)

    def __getitem__(self, eid):
        return self._edges[eid]

    @property
    def edges(self):
        return dict(self._edges)

    def _key(self):
        return (tuple(sorted(self._edges.items())), self.loops)

    def __eq__(self, other):
        return isinstance(other, Coloring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Coloring({self._edges}, loops={self.loops})"

    def to_json(self):
        data = {"edges": {str(e): c for e, c in sorted(self._edges.items())}}
        if self.loops:
            data["loops"] = list(self.loops)
        return data

    @classmethod
    def from_json(cls, data):
        return cls({int(e): c for e, c in data["edges"].items()},
                   data.get("loops", ()))


class ShadowColoring:
    """Semi-arc coloring together with a region coloring by an X-set."""

    __slots__ = ("base", "regions")

    def __init__(self, base, regions):
        self.base = base
        self.regions = dict(regions)

    def __getitem__(self, eid):
        return self.base[eid]

    def region(self, face):
        return self.regions[face]

    def _key(self):
        return (self.base._key(), tuple(sorted(self.regions.items())))

    def __eq__(self, other):
        return isinstance(other, ShadowColoring) and \
            self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ShadowColoring({self.base!r}, regions={self.regions})"

    def to_json(self):
        data = self.base.to_json()
        data["regions"] = {str(f): y for f, y in sorted(self.regions.items())}
        return data

    @classmethod
    def from_json(cls, data):
        return cls(Coloring.from_json(data),
                   {int(f): y for f, y in data["regions"].items()})


def _crossing_frame(node):
    """(pair_edges, derived_edges) where pair_edges carry the source pair
    (a, b) and derived_edges carry (under(a, b), over(b, a))."""
    roles = node.role_edges()
    ea, eb = source_semiarcs(node)
    if node.sign == 1:
        return (ea, eb), (roles["under_out"], roles["over_in"])
    return (ea, eb), (roles["under_in"], roles["over_out"])


def _touching(diagram):
    touching = {}
    for node in diagram.nodes.values():
        for eid, _ in node.ccw:
            touching.setdefault(eid, set()).add(node.id)
    return touching


def _propagate(diagram, biq, colors, queue, touching):
    """Forced deductions from the edges in `queue`; False on conflict.
    Mutates `colors`."""
    pending = set(queue)
    while pending:
        eid = pending.pop()
        for nid in touching.get(eid, ()):
            node = diagram.nodes[nid]
            if node.kind == "marked":
                vals = {colors[e] for e, _ in node.ccw if e in colors}
                if len(vals) > 1:
                    return False
                val = vals.pop()
                for e, _ in node.ccw:
                    if e not in colors:
                        colors[e] = val
                        pending.add(e)
                continue
            (pa, pb), (du, do) = _crossing_frame(node)
            a, b = colors.get(pa), colors.get(pb)
            u, o = colors.get(du), colors.get(do)
            if a is None and b is None:
                if u is None or o is None:
                    continue
                a, b = biq.pair_map_inv(u, o)
            elif b is None:
                if o is None:
                    continue  # (a, u) alone does not pin b
                b = biq.over_inv(o, a)
            elif a is None:
                if u is None:
                    continue  # (b, o) alone does not pin a
                a = biq.under_inv(u, b)
            # a kink can make these pairs collide, so check one at a time
            want = [(pa, a), (pb, b),
                    (du, biq.under(a, b)), (do, biq.over(b, a))]
            for e, val in want:
                have = colors.get(e)
                if have is None:
                    colors[e] = val
                    pending.add(e)
                elif have != val:
                    return False
    return True


def enumerate_colorings(diagram, biq):
    """All colorings of the diagram, in a deterministic order."""
    n = biq.n
    edge_ids = sorted(diagram.edges)
    touching = _touching(diagram)
    results = []

    def search(colors):
        free = next((e for e in edge_ids if e not in colors), None)
        if free is None:
            results.append(dict(colors))
            return
        for x in range(n):
            trial = dict(colors)
            trial[free] = x
            if _propagate(diagram, biq, trial, [free], touching):
                search(trial)

    search({})
    loop_space = [()]
    for _ in range(diagram.free_loops):
        loop_space = [t + (x,) for t in loop_space for x in range(n)]
    out = [Coloring(colors, loops)
           for colors in results for loops in loop_space]
    out.sort(key=lambda c: c._key())
    return out


def is_coloring(diagram, biq, coloring):
    """Check every node relation; free-loop colors are unconstrained but
    must be present in the right number."""
    if len(coloring.loops) != diagram.free_loops:
        return False
    try:
        colors = {eid: coloring[eid] for eid in diagram.edges}
    except KeyError:
        return False
    if not all(0 <= c < biq.n for c in colors.values()):
        return False
    for node in diagram.nodes.values():
        if node.kind == "marked":
            if len({colors[e] for e, _ in node.ccw}) != 1:
                return False
            continue
        (pa, pb), (du, do) = _crossing_frame(node)
        a, b = colors[pa], colors[pb]
        if colors[du] != biq.under(a, b) or colors[do] != biq.over(b, a):
            return False
    return True


def extend_to_shadow(diagram, biq, coloring, xset, seed):
    """Extend a coloring to the regions, forced from one seed value.

    `seed` is (face index, element of Y).  Crossing an edge along its
    co-orientation acts on the region color by the edge's color; the
    extension is found by a spanning-tree walk of the region adjacency
    and then checked on every edge, returning None if some non-tree edge
    disagrees (cannot happen when the X-set actually verifies).
    Connected diagrams only: region adjacency through a free loop or
    between components is not tracked.
    """
    if diagram.free_loops or len(diagram.components()) > 1:
        raise ValueError("shadow extensions need a connected diagram")
    faces = diagram.faces()
    face0, y0 = seed
    if not (0 <= face0 < len(faces)):
        raise ValueError(f"no face {face0}")
    regions = {face0: y0}
    arcs = []
    for eid in sorted(diagram.edges):
        src = diagram.face_of_dart((eid, -1))
        dst = diagram.face_of_dart((eid, 1))
        arcs.append((src, dst, coloring[eid]))
    frontier = [face0]
    while frontier:
        nxt = []
        for src, dst, x in arcs:
            if src in regions and dst not in regions:
                regions[dst] = xset.apply(x, regions[src])
                nxt.append(dst)
            elif dst in regions and src not in regions:
                regions[src] = xset.apply_inv(x, regions[dst])
                nxt.append(src)
        if not nxt:
            break
        frontier = nxt
    if len(regions) != len(faces):
        raise ValueError("region adjacency is not connected")
    for src, dst, x in arcs:
        if regions[dst] != xset.apply(x, regions[src]):
            return None
    return ShadowColoring(coloring, regions)


def enumerate_shadow_colorings(diagram, biq, xset):
    """All shadow colorings: every base coloring extended from every seed
    value at the first face."""
    out = []
    for base in enumerate_colorings(diagram, biq):
        for y in range(xset.m):
            shadow = extend_to_shadow(diagram, biq, base, xset, (0, y))
            if shadow is not None:
                out.append(shadow)
    return out
