"""Reidemeister moves on diagrams, with transport of colorings.

Moves are data: each of the five kinds names the diagram elements it acts
on, so a move sequence can be stored as JSON and replayed later.  Applying
a move builds a new diagram; transporting carries a coloring (and, for
shadow data, the region colors) across the move by the unique extension
the move admits.

Id discipline, relied on by transport:

* Added pieces get fresh ids; a split edge keeps its id on the fragment
  holding the old tail end.
* Removing crossings welds their strands end to end: a merged edge keeps
  the minimal member id, a chain that closes on itself becomes a free
  loop.
* The slide move keeps every edge and node id and every crossing sign;
  only the rotation tables of its three crossings change.

Region data travels as a sides map: sides[e] is the region color on the
right of edge e, which is the left face of the backwards dart (e, -1).
The left-hand value is then forced by the X-set action, so a sides map
plus the edge coloring recovers the full region coloring wherever regions
are faces.  Moves do not preserve the unbounded-face hint; results carry
none.
"""

from __future__ import annotations

import json

from .colorings import Coloring, ShadowColoring, _propagate, _touching
from .diagrams import (Crossing, Diagram, Edge, HEAD, MarkedVertex, TAIL,
                       resolution_welds, resolve, weld_and_splice)


class MoveError(ValueError):
    """The move does not fit the diagram it was asked to act on."""


class R1Add:
    """Put a kink on an edge, bulging into the face on the given side of
    travel; handedness is the sign of the new crossing."""

    kind = "r1_add"
    __slots__ = ("edge", "side", "handedness")

    def __init__(self, edge, side, handedness):
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if handedness not in (1, -1):
            raise ValueError("handedness must be +1 or -1")
        self.edge = edge
        self.side = side
        self.handedness = handedness

    def __repr__(self):
        return (f"R1Add({self.edge}, {self.side!r}, "
                f"{self.handedness:+d})")


class R1Remove:
    """Undo a kink: the crossing must have a loop edge running from one of
    its outgoing ends straight back into the other strand's incoming end."""

    kind = "r1_remove"
    __slots__ = ("crossing",)

    def __init__(self, crossing):
        self.crossing = crossing

    def __repr__(self):
        return f"R1Remove({self.crossing})"


class R2Add:
    """Push edge_a across the named face and over edge_b, creating a
    cancelling crossing pair with the first strand on top at both."""

    kind = "r2_add"
    __slots__ = ("edge_a", "edge_b", "face")

    def __init__(self, edge_a, edge_b, face):
        self.edge_a = edge_a
        self.edge_b = edge_b
        self.face = face

    def __repr__(self):
        return f"R2Add({self.edge_a}, {self.edge_b}, face={self.face})"


class R2Remove:
    """Cancel two crossings bounding a bigon whose strands do not clasp:
    one bigon edge must be on the over strand at both crossings."""

    kind = "r2_remove"
    __slots__ = ("pair",)

    def __init__(self, pair):
        self.pair = tuple(pair)
        if len(self.pair) != 2:
            raise ValueError("pair must name exactly two crossings")

    def __repr__(self):
        return f"R2Remove({self.pair})"


class R3:
    """Slide the strand over crossings tm and tb across the crossing mb.
    The names record which strand pair meets where: tm carries top over
    middle, tb top over bottom, mb middle over bottom, and the three
    shared edges must bound a triangular face."""

    kind = "r3"
    __slots__ = ("tm", "tb", "mb")

    def __init__(self, tm, tb, mb):
        self.tm = tm
        self.tb = tb
        self.mb = mb

    def __repr__(self):
        return f"R3(tm={self.tm}, tb={self.tb}, mb={self.mb})"


_MOVE_FIELDS = {
    "r1_add": ("edge", "side", "handedness"),
    "r1_remove": ("crossing",),
    "r2_add": ("edge_a", "edge_b", "face"),
    "r2_remove": ("pair",),
    "r3": ("tm", "tb", "mb"),
}


def _id_field(data, key, kind):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{kind}: {key} must be an integer id")
    return value


def move_from_json(data):
    """Build a move from its JSON record; ValueError on anything
    malformed."""
    if not isinstance(data, dict):
        raise ValueError(f"move must be an object, not "
                         f"{type(data).__name__}")
    kind = data.get("type")
    if kind not in _MOVE_FIELDS:
        raise ValueError(f"unknown move type {kind!r}")
    fields = _MOVE_FIELDS[kind]
    extra = sorted(set(data) - {"type"} - set(fields))
    if extra:
        raise ValueError(f"{kind}: unexpected keys {extra}")
    for field in fields:
        if field not in data:
            raise ValueError(f"{kind}: missing {field!r}")
    if kind == "r1_add":
        return R1Add(_id_field(data, "edge", kind), data["side"],
                     data["handedness"])
    if kind == "r1_remove":
        return R1Remove(_id_field(data, "crossing", kind))
    if kind == "r2_add":
        return R2Add(_id_field(data, "edge_a", kind),
                     _id_field(data, "edge_b", kind),
                     _id_field(data, "face", kind))
    if kind == "r2_remove":
        pair = data["pair"]
        if not isinstance(pair, (list, tuple)) or len(pair) != 2 or \
                any(isinstance(p, bool) or not isinstance(p, int)
                    for p in pair):
            raise ValueError("r2_remove: pair must list two crossing ids")
        return R2Remove(pair)
    return R3(_id_field(data, "tm", kind), _id_field(data, "tb", kind),
              _id_field(data, "mb", kind))


def move_to_json(move):
    data = {"type": move.kind}
    for field in _MOVE_FIELDS[move.kind]:
        value = getattr(move, field)
        data[field] = list(value) if isinstance(value, tuple) else value
    return data


def script_from_json(data):
    """Moves of a script given as JSON text, a {"moves": [...]} object, or
    a bare list of move records."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as err:
            raise ValueError(f"script is not valid JSON: {err}") from None
    if isinstance(data, dict):
        if "moves" not in data:
            raise ValueError("script object needs a 'moves' list")
        data = data["moves"]
    if not isinstance(data, list):
        raise ValueError("script must be a list of moves")
    moves = []
    for i, record in enumerate(data):
        try:
            moves.append(move_from_json(record))
        except ValueError as err:
            raise ValueError(f"move {i}: {err}") from None
    return moves


def script_to_json(moves):
    return {"moves": [move_to_json(m) for m in moves]}


def _as_moves(script):
    if isinstance(script, (str, dict)):
        return script_from_json(script)
    moves = []
    for i, item in enumerate(script):
        if isinstance(item, dict):
            try:
                moves.append(move_from_json(item))
            except ValueError as err:
                raise ValueError(f"move {i}: {err}") from None
        else:
            moves.append(item)
    return moves


# --- applying a single move ------------------------------------------


def _patched_nodes(diagram, patches):
    """Copies of every node, with the rotation entries at the given
    (node, slot) positions replaced."""
    out = []
    for nid in sorted(diagram.nodes):
        node = diagram.nodes[nid]
        ccw = [patches.get((nid, slot), node.ccw[slot])
               for slot in range(4)]
        if node.kind == "crossing":
            out.append(Crossing(nid, ccw, 0))
        else:
            out.append(MarkedVertex(nid, ccw, node.marker))
    return out


def _apply_r1_add(diagram, move):
    host = diagram.edges.get(move.edge)
    if host is None:
        raise MoveError(f"no edge {move.edge}")
    k = diagram.fresh_node_id()
    loop = diagram.fresh_edge_id()
    cont = loop + 1
    # the host splits into host (tail side), the loop, and cont (head
    # side); the four side/handedness variants share one rotation table
    # per side, distinguished by where the over strand enters
    if move.side == "right":
        ccw = [(loop, TAIL), (cont, TAIL), (move.edge, HEAD), (loop, HEAD)]
        over_in = 2 if move.handedness == 1 else 3
        loop_ends = ((k, 0), (k, 3))
        cont_tail = (k, 1)
    else:
        ccw = [(loop, TAIL), (loop, HEAD), (move.edge, HEAD), (cont, TAIL)]
        over_in = 1 if move.handedness == 1 else 2
        loop_ends = ((k, 0), (k, 1))
        cont_tail = (k, 3)
    edges = [Edge(move.edge, host.tail, (k, 2)) if e.id == move.edge else e
             for e in diagram.edges.values()]
    edges.append(Edge(loop, *loop_ends))
    edges.append(Edge(cont, cont_tail, host.head))
    nodes = _patched_nodes(diagram, {host.head: (cont, HEAD)})
    nodes.append(Crossing(k, ccw, over_in))
    out = Diagram(edges, nodes, diagram.free_loops, None)
    return out, {"host": move.edge, "fresh": (loop, cont), "crossing": k}


def _apply_r1_remove(diagram, move):
    node = diagram.nodes.get(move.crossing)
    if node is None or node.kind != "crossing":
        raise MoveError(f"no crossing {move.crossing}")
    roles = node.role_edges()
    if roles["over_out"] == roles["under_in"]:
        loop = roles["over_out"]
    elif roles["under_out"] == roles["over_in"]:
        loop = roles["under_out"]
    else:
        raise MoveError(f"crossing {move.crossing} carries no kink")
    welds = [((roles["over_in"], HEAD), (roles["over_out"], TAIL)),
             ((roles["under_in"], HEAD), (roles["under_out"], TAIL))]
    out, _, chains = weld_and_splice(diagram, [node.id], [], welds)
    return out, {"chains": chains, "crossing": node.id, "loop": loop}


def _apply_r2_add(diagram, move):
    if move.edge_a == move.edge_b:
        raise MoveError("the two strands must be distinct edges")
    for eid in (move.edge_a, move.edge_b):
        if eid not in diagram.edges:
            raise MoveError(f"no edge {eid}")
    faces = diagram.faces()
    if not 0 <= move.face < len(faces):
        raise MoveError(f"no face {move.face}")
    orbit = faces[move.face]
    darts_a = [d for d in orbit if d[0] == move.edge_a]
    darts_b = [d for d in orbit if d[0] == move.edge_b]
    if len(darts_a) != 1 or len(darts_b) != 1:
        raise MoveError(
            f"face {move.face} must see edges {move.edge_a} and "
            f"{move.edge_b} exactly once each")
    # canonical picture: the face between the strands, edge_a running
    # eastward below it when its face dart is forward, edge_b westward
    # above it; crossings p (west) and q (east) with slots [N, W, S, E]
    sa = darts_a[0][1]
    sb = darts_b[0][1]
    ea = diagram.edges[move.edge_a]
    eb = diagram.edges[move.edge_b]
    p = diagram.fresh_node_id()
    q = p + 1
    base = diagram.fresh_edge_id()
    a_mid, a_far, b_mid, b_far = base, base + 1, base + 2, base + 3
    a_w, a_e = (move.edge_a, a_far) if sa == 1 else (a_far, move.edge_a)
    b_w, b_e = (b_far, move.edge_b) if sb == 1 else (move.edge_b, b_far)

    def end(eid, tail_if):
        return (eid, TAIL if tail_if else HEAD)

    p_ccw = [end(a_mid, sa == 1), end(b_w, sb == 1),
             end(a_w, sa != 1), end(b_mid, sb != 1)]
    q_ccw = [end(a_mid, sa != 1), end(b_mid, sb == 1),
             end(a_e, sa == 1), end(b_e, sb != 1)]
    if sa == 1:
        new_a = [Edge(a_w, ea.tail, (p, 2)), Edge(a_mid, (p, 0), (q, 0)),
                 Edge(a_e, (q, 2), ea.head)]
    else:
        new_a = [Edge(a_w, (p, 2), ea.head), Edge(a_mid, (q, 0), (p, 0)),
                 Edge(a_e, ea.tail, (q, 2))]
    if sb == 1:
        new_b = [Edge(b_w, (p, 1), eb.head), Edge(b_mid, (q, 1), (p, 3)),
                 Edge(b_e, eb.tail, (q, 3))]
    else:
        new_b = [Edge(b_w, eb.tail, (p, 1)), Edge(b_mid, (p, 3), (q, 1)),
                 Edge(b_e, (q, 3), eb.head)]
    edges = [e for e in diagram.edges.values()
             if e.id not in (move.edge_a, move.edge_b)]
    edges += new_a + new_b
    nodes = _patched_nodes(diagram, {ea.head: (a_far, HEAD),
                                     eb.head: (b_far, HEAD)})
    nodes.append(Crossing(p, p_ccw, 2 if sa == 1 else 0))
    nodes.append(Crossing(q, q_ccw, 0 if sa == 1 else 2))
    out = Diagram(edges, nodes, diagram.free_loops, None)
    info = {"a": move.edge_a, "b": move.edge_b,
            "fresh": {"a_mid": a_mid, "a_far": a_far,
                      "b_mid": b_mid, "b_far": b_far},
            "crossings": (p, q)}
    return out, info


def _apply_r2_remove(diagram, move):
    a, b = sorted(move.pair)
    if a == b:
        raise MoveError(f"crossing pair must be distinct, got {a} twice")
    for nid in (a, b):
        node = diagram.nodes.get(nid)
        if node is None or node.kind != "crossing":
            raise MoveError(f"no crossing {nid}")
    over_a = {diagram.nodes[a].ccw[s][0] for s in (0, 2)}
    over_b = {diagram.nodes[b].ccw[s][0] for s in (0, 2)}
    bigon = None
    clasped = False
    for orbit in diagram.faces():
        if len(orbit) != 2:
            continue
        if {diagram.dart_target(d)[0] for d in orbit} != {a, b}:
            continue
        if {d[0] for d in orbit} & over_a & over_b:
            bigon = orbit
            break
        clasped = True
    if bigon is None:
        if clasped:
            raise MoveError(f"crossings {a} and {b} bound a clasp, not a "
                            f"cancelling bigon")
        raise MoveError(f"crossings {a} and {b} bound no bigon")
    welds = []
    for nid in (a, b):
        roles = diagram.nodes[nid].role_edges()
        welds.append(((roles["over_in"], HEAD), (roles["over_out"], TAIL)))
        welds.append(((roles["under_in"], HEAD),
                      (roles["under_out"], TAIL)))
    out, _, chains = weld_and_splice(diagram, [a, b], [], welds)
    return out, {"chains": chains, "crossings": (a, b),
                 "bigon": tuple(bigon)}


def _apply_r3(diagram, move):
    names = {"tm": move.tm, "tb": move.tb, "mb": move.mb}
    if len(set(names.values())) != 3:
        raise MoveError("the three crossings must be distinct")
    for nid in names.values():
        node = diagram.nodes.get(nid)
        if node is None or node.kind != "crossing":
            raise MoveError(f"no crossing {nid}")

    def pair(nid, slots):
        return {diagram.nodes[nid].ccw[s][0] for s in slots}

    # a strand closed through only two of the crossings offers both its
    # arcs as candidates, so the triangular face picks the shared edges
    shared = {
        "T": pair(move.tm, (0, 2)) & pair(move.tb, (0, 2)),
        "M": pair(move.tm, (1, 3)) & pair(move.mb, (0, 2)),
        "B": pair(move.tb, (1, 3)) & pair(move.mb, (1, 3)),
    }
    for label, found in shared.items():
        if not found:
            raise MoveError(
                f"crossings {move.tm}, {move.tb}, {move.mb} share no "
                f"{label} strand edge")
    matches = []
    for orbit in diagram.faces():
        if len(orbit) != 3:
            continue
        eids = [d[0] for d in orbit]
        if len(set(eids)) != 3:
            continue
        for et in shared["T"]:
            for em in shared["M"] - {et}:
                for eb in shared["B"] - {et, em}:
                    if {et, em, eb} == set(eids):
                        matches.append(
                            ({"T": et, "M": em, "B": eb}, orbit))
    if not matches:
        raise MoveError(
            f"crossings {move.tm}, {move.tb}, {move.mb} bound no "
            f"triangle to slide across")
    if len(matches) > 1:
        raise MoveError(
            f"crossings {move.tm}, {move.tb}, {move.mb} bound more than "
            f"one candidate triangle")
    tri, tri_darts = matches[0]
    over_at = {move.tm: "T", move.tb: "T", move.mb: "M"}
    under_at = {move.tm: "M", move.tb: "B", move.mb: "B"}

    def strand_slots(nid, strand):
        node = diagram.nodes[nid]
        if over_at[nid] == strand:
            return 0, 2
        return node.under_in, (node.under_in + 2) % 4

    # each strand keeps running outer -> shared -> outer but now meets
    # its two crossings in the opposite order; this rewrites all twelve
    # slots of the three crossings and nothing else
    moved = {}
    for strand, t_eid in tri.items():
        t = diagram.edges[t_eid]
        p_node, q_node = t.tail[0], t.head[0]
        p_in, p_out = strand_slots(p_node, strand)
        q_in, q_out = strand_slots(q_node, strand)
        outer_in = diagram.nodes[p_node].ccw[p_in][0]
        outer_out = diagram.nodes[q_node].ccw[q_out][0]
        moved[(q_node, q_in)] = (outer_in, HEAD)
        moved[(q_node, q_out)] = (t_eid, TAIL)
        moved[(p_node, p_in)] = (t_eid, HEAD)
        moved[(p_node, p_out)] = (outer_out, TAIL)
    nodes = []
    for nid in sorted(diagram.nodes):
        node = diagram.nodes[nid]
        if nid in over_at:
            ccw = tuple(moved[(nid, s)] for s in range(4))
            nodes.append(Crossing(nid, ccw, 0))
        elif node.kind == "crossing":
            nodes.append(Crossing(nid, node.ccw, 0))
        else:
            nodes.append(MarkedVertex(nid, node.ccw, node.marker))
    ends = {}
    for node in nodes:
        for slot, (eid, which) in enumerate(node.ccw):
            ends[(eid, which)] = (node.id, slot)
    edges = [Edge(eid, ends[(eid, TAIL)], ends[(eid, HEAD)])
             for eid in sorted(diagram.edges)]
    out = Diagram(edges, nodes, diagram.free_loops, None)
    b_dart = next(d for d in tri_darts if d[0] == tri["B"])
    info = {"edges": tri, "nodes": names,
            "eps_tm": diagram.nodes[move.tm].sign,
            "eps_b": 1 if b_dart[1] == -1 else -1,
            "tri_darts": tuple(tri_darts)}
    return out, info


_APPLIERS = {
    "r1_add": _apply_r1_add,
    "r1_remove": _apply_r1_remove,
    "r2_add": _apply_r2_add,
    "r2_remove": _apply_r2_remove,
    "r3": _apply_r3,
}


def _apply(diagram, move):
    try:
        handler = _APPLIERS[move.kind]
    except (AttributeError, KeyError):
        raise ValueError(f"not a move: {move!r}") from None
    return handler(diagram, move)


def apply_move(diagram, move):
    """The diagram after the move; MoveError if the move does not fit."""
    out, _ = _apply(diagram, move)
    return out


# --- transporting colorings ------------------------------------------


def _complete_colors(diagram, biq, known, loops):
    """The unique coloring extending `known`; the handful of edges a move
    creates or detaches is recolored by propagation plus, where the local
    relations alone stall, exhaustion over the leftovers."""
    colors = dict(known)
    touching = _touching(diagram)
    if not _propagate(diagram, biq, colors, sorted(colors), touching):
        raise ValueError("transported colors conflict at a crossing")
    free = [eid for eid in sorted(diagram.edges) if eid not in colors]
    if free:
        found = []

        def fill(partial, i):
            if i == len(free):
                found.append(dict(partial))
                return
            for x in range(biq.n):
                trial = dict(partial)
                trial[free[i]] = x
                if _propagate(diagram, biq, trial, [free[i]], touching):
                    fill(trial, i + 1)

        fill(colors, 0)
        if len(found) != 1:
            raise ValueError(f"move admits {len(found)} color extensions, "
                             f"expected exactly one")
        colors = found[0]
    return Coloring(colors, loops)


def _chain_colors(chains, coloring):
    """Colors after welding: a merged edge takes the color shared by its
    chain's two ends, a closed chain hands its first member's color to
    the new free loop."""
    colors = {}
    loops = list(coloring.loops)
    for members, closed in chains:
        if closed:
            loops.append(coloring[members[0]])
            continue
        if coloring[members[0]] != coloring[members[-1]]:
            raise ValueError("weld joins differently colored strands")
        colors[min(members)] = coloring[members[0]]
    return Coloring(colors, loops)


def _transport_colors(new_diagram, move, info, coloring, biq):
    kind = move.kind
    if kind in ("r1_remove", "r2_remove"):
        return _chain_colors(info["chains"], coloring)
    if kind == "r3":
        tri = set(info["edges"].values())
        known = {eid: c for eid, c in coloring.edges.items()
                 if eid not in tri}
    else:
        known = coloring.edges
    return _complete_colors(new_diagram, biq, known, coloring.loops)


def transport_coloring(diagram, move, coloring, biq):
    """The coloring of the moved diagram matching `coloring`; together
    with apply_move this realizes the move's coloring bijection."""
    new_diagram, info = _apply(diagram, move)
    return _transport_colors(new_diagram, move, info, coloring, biq)


# --- region colors ----------------------------------------------------


def sides_from_shadow(diagram, shadow):
    """Right-hand region color of every edge."""
    return {eid: shadow.regions[diagram.face_of_dart((eid, -1))]
            for eid in diagram.edges}


def shadow_from_sides(diagram, base, sides, xset):
    """Rebuild the full region coloring from a sides map."""
    regions = {}
    for eid in sorted(diagram.edges):
        right = diagram.face_of_dart((eid, -1))
        left = diagram.face_of_dart((eid, 1))
        for face, y in ((right, sides[eid]),
                        (left, xset.apply(base[eid], sides[eid]))):
            if regions.setdefault(face, y) != y:
                raise ValueError(
                    f"side colors disagree across face {face}")
    if len(regions) != len(diagram.faces()):
        raise ValueError("some region touches no edge")
    return ShadowColoring(base, regions)


def _corner_value(xset, colors, sides, end, left_when):
    # the corner left of a dart leaving through a tail end, or arriving
    # through a head end, is the edge's left side; otherwise its right
    eid, which = end
    y = sides.get(eid)
    if y is None:
        return None
    if which == left_when:
        return xset.apply(colors[eid], y)
    return y


def _set_side(xset, colors, sides, end, left_when, value):
    eid, which = end
    if which == left_when:
        sides[eid] = xset.apply_inv(colors[eid], value)
    else:
        sides[eid] = value


def _check_sides(diagram, xset, colors, sides):
    """Every corner of every node must see a single region color; this is
    exactly side consistency, connected or not."""
    for nid in sorted(diagram.nodes):
        node = diagram.nodes[nid]
        for s in range(4):
            va = _corner_value(xset, colors, sides, node.ccw[s], TAIL)
            vb = _corner_value(xset, colors, sides,
                               node.ccw[(s + 1) % 4], HEAD)
            if va is not None and vb is not None and va != vb:
                raise ValueError(
                    f"region colors disagree at corner {s} of node {nid}")


def _complete_sides(diagram, xset, colors, sides):
    sides = dict(sides)
    changed = True
    while changed:
        changed = False
        for nid in sorted(diagram.nodes):
            node = diagram.nodes[nid]
            for s in range(4):
                ea, eb = node.ccw[s], node.ccw[(s + 1) % 4]
                va = _corner_value(xset, colors, sides, ea, TAIL)
                vb = _corner_value(xset, colors, sides, eb, HEAD)
                if va is None and vb is not None:
                    _set_side(xset, colors, sides, ea, TAIL, vb)
                    changed = True
                elif vb is None and va is not None:
                    _set_side(xset, colors, sides, eb, HEAD, va)
                    changed = True
    missing = [eid for eid in sorted(diagram.edges) if eid not in sides]
    if missing:
        raise ValueError(f"cannot recover side colors at edges {missing}")
    _check_sides(diagram, xset, colors, sides)
    return sides


def _chain_sides(new_diagram, chains, old_sides, new_coloring, xset):
    sides = {}
    for members, closed in chains:
        if closed:
            continue
        if old_sides[members[0]] != old_sides[members[-1]]:
            raise ValueError("weld joins edges with different right-hand "
                             "region colors")
        sides[min(members)] = old_sides[members[0]]
    _check_sides(new_diagram, xset, new_coloring, sides)
    return sides


def _transport_sides(new_diagram, move, info, old_sides, new_coloring,
                     xset):
    kind = move.kind
    if kind in ("r1_remove", "r2_remove"):
        return _chain_sides(new_diagram, info["chains"], old_sides,
                            new_coloring, xset)
    if kind == "r1_add":
        # the far fragment still borders the host's old right-hand region
        sides = dict(old_sides)
        sides[info["fresh"][1]] = old_sides[info["host"]]
    elif kind == "r2_add":
        fresh = info["fresh"]
        sides = dict(old_sides)
        sides[fresh["a_far"]] = old_sides[info["a"]]
        sides[fresh["b_far"]] = old_sides[info["b"]]
    else:
        tri = set(info["edges"].values())
        sides = {eid: y for eid, y in old_sides.items() if eid not in tri}
    return _complete_sides(new_diagram, xset, new_coloring, sides)


def transport_shadow(diagram, move, shadow, biq, xset):
    """Single-move convenience carrying a full region coloring across.
    The moved diagram must keep all regions as faces, so a move that
    closes a strand into a free loop is rejected; script pipelines track
    sides maps instead."""
    new_diagram, info = _apply(diagram, move)
    if new_diagram.free_loops != diagram.free_loops:
        raise ValueError("move closed a free loop; region colors cannot "
                         "follow it")
    coloring = _transport_colors(new_diagram, move, info, shadow.base, biq)
    sides = _transport_sides(new_diagram, move, info,
                             sides_from_shadow(diagram, shadow),
                             coloring, xset)
    return shadow_from_sides(new_diagram, coloring, sides, xset)


# --- scripts ----------------------------------------------------------


class R3Event:
    """Colors and signs read off at one slide stage: x1, x2, x3 are the
    bottom, middle, top strand colors at the stage's source region, y its
    region color when tracked."""

    __slots__ = ("stage", "x1", "x2", "x3", "eps_tm", "eps_b", "y")

    def __init__(self, stage, x1, x2, x3, eps_tm, eps_b, y=None):
        self.stage = stage
        self.x1 = x1
        self.x2 = x2
        self.x3 = x3
        self.eps_tm = eps_tm
        self.eps_b = eps_b
        self.y = y

    @property
    def exponent(self):
        return self.eps_tm * self.eps_b

    def __repr__(self):
        parts = [f"stage={self.stage}",
                 f"args=({self.x1}, {self.x2}, {self.x3})",
                 f"exponent={self.exponent:+d}"]
        if self.y is not None:
            parts.append(f"y={self.y}")
        return f"R3Event({', '.join(parts)})"


def _stage_region(before, after, info):
    """Locate the stage's source region: three consecutive backwards darts,
    the middle one on a shared strand edge, in whichever of the two
    diagrams exhibits it.  Returns (host, host name, darts by strand)."""
    tri = info["edges"]
    hits = {}
    for host_name, host in (("before", before), ("after", after)):
        for eid in tri.values():
            d2 = (eid, -1)
            face = host.face_of_dart(d2)
            orbit = host.faces()[face]
            i = orbit.index(d2)
            # the flanking darts may coincide: one edge can serve as both
            # outer strands when the site crossings chain directly
            d1 = orbit[i - 1]
            d3 = orbit[(i + 1) % len(orbit)]
            if d1[1] == -1 and d3[1] == -1:
                hits.setdefault((host_name, face), (d1, d2, d3))
    if len(hits) != 1:
        raise ValueError(f"stage source region search found {len(hits)} "
                         f"candidates, expected exactly one")
    (host_name, _), (d1, d2, d3) = next(iter(hits.items()))
    host = before if host_name == "before" else after
    over_at = {info["nodes"]["tm"]: "T", info["nodes"]["tb"]: "T",
               info["nodes"]["mb"]: "M"}
    under_at = {info["nodes"]["tm"]: "M", info["nodes"]["tb"]: "B",
                info["nodes"]["mb"]: "B"}

    def strand_at(nid, slot):
        return over_at[nid] if slot in (0, 2) else under_at[nid]

    strand_of_tri = {eid: label for label, eid in tri.items()}
    middle = host.edges[d2[0]]
    e3 = host.edges[d3[0]]
    darts = {strand_of_tri[d2[0]]: d2}
    darts[strand_at(*host.dart_target(d1))] = d1
    darts[strand_at(*(e3.tail if d3[1] == 1 else e3.head))] = d3
    if len(darts) != 3 or host.dart_target(d1)[0] != middle.head[0]:
        raise ValueError("stage source region does not meet all three "
                         "strands")
    return host, host_name, darts


class ScriptResult:
    """Final diagram with the transported colorings, their slide events,
    and the transported sides maps when region colors were tracked."""

    __slots__ = ("final", "colorings", "events", "sides")

    def __init__(self, final, colorings, events, sides=None):
        self.final = final
        self.colorings = tuple(colorings)
        self.events = tuple(tuple(ev) for ev in events)
        self.sides = None if sides is None else tuple(sides)


def run_script(diagram, script, colorings=(), biq=None, xset=None,
               sides=None):
    """Apply a whole move script, carrying colorings along.

    Transporting colorings needs `biq`; tracking region colors needs
    `xset` plus one sides map per coloring.  Pattern failures surface as
    MoveError naming the zero-based stage."""
    moves = _as_moves(script)
    colorings = list(colorings)
    if colorings and biq is None:
        raise ValueError("transporting colorings needs the biquandle")
    if sides is not None:
        if xset is None:
            raise ValueError("tracking region colors needs the X-set "
                             "action")
        if len(sides) != len(colorings):
            raise ValueError("need one sides map per coloring")
        sides = [dict(s) for s in sides]
    events = [[] for _ in colorings]
    current = diagram
    for stage, move in enumerate(moves):
        try:
            new_diagram, info = _apply(current, move)
        except MoveError as err:
            raise MoveError(f"stage {stage} ({move.kind}): {err}") \
                from None
        new_colorings = [
            _transport_colors(new_diagram, move, info, c, biq)
            for c in colorings]
        new_sides = None
        if sides is not None:
            new_sides = [
                _transport_sides(new_diagram, move, info, s, c, xset)
                for s, c in zip(sides, new_colorings)]
        if move.kind == "r3" and colorings:
            host, host_name, darts = _stage_region(current, new_diagram,
                                                   info)
            for j, old_coloring in enumerate(colorings):
                at_host = old_coloring if host_name == "before" \
                    else new_colorings[j]
                y = None
                if sides is not None:
                    side_map = sides[j] if host_name == "before" \
                        else new_sides[j]
                    values = {side_map[d[0]] for d in darts.values()}
                    if len(values) != 1:
                        raise ValueError("stage source region sees "
                                         "conflicting region colors")
                    y = values.pop()
                events[j].append(R3Event(
                    stage, at_host[darts["B"][0]], at_host[darts["M"][0]],
                    at_host[darts["T"][0]], info["eps_tm"], info["eps_b"],
                    y))
        current = new_diagram
        colorings = new_colorings
        sides = new_sides
    return ScriptResult(current, colorings, events, sides)


def resolve_transport(diagram, sign, colorings, sides=None, xset=None):
    """Open every marked vertex, carrying colorings through the merges.
    Returns (diagram, colorings, sides)."""
    drop, welds = resolution_welds(diagram, sign)
    out, _, chains = weld_and_splice(diagram, drop, [], welds)
    new_colorings = [_chain_colors(chains, c) for c in colorings]
    new_sides = None
    if sides is not None:
        if xset is None:
            raise ValueError("tracking region colors needs the X-set "
                             "action")
        new_sides = [_chain_sides(out, chains, s, c, xset)
                     for s, c in zip(sides, new_colorings)]
    return out, new_colorings, new_sides


class CertifyResult:

    __slots__ = ("ok", "problems")

    def __init__(self, ok, problems):
        self.ok = ok
        self.problems = tuple(problems)

    def __repr__(self):
        return f"CertifyResult(ok={self.ok}, problems={self.problems})"


def certify_admissible(diagram, script_plus, script_minus):
    """Check that both resolutions of a marked diagram reduce to
    crossingless diagrams under the given scripts."""
    problems = []
    for sign, script in ((1, script_plus), (-1, script_minus)):
        name = "positive" if sign == 1 else "negative"
        resolved = resolve(diagram, sign)
        try:
            result = run_script(resolved, script)
        except MoveError as err:
            problems.append(f"{name} resolution: {err}")
            continue
        remaining = len(result.final.crossings())
        if remaining:
            problems.append(f"{name} resolution: {remaining} crossings "
                            f"remain after the script")
    return CertifyResult(not problems, problems)
