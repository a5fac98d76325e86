"""Planar diagrams of links and marked graphs as combinatorial maps.

A diagram is a 4-valent graph with a rotation system: every node lists its
four edge ends in counterclockwise order.  Nodes are crossings (with a
designated over-strand) or marked vertices (saddle points of a surface
diagram).  Edges are the semi-arcs: oriented, cut at every node.  A
crossingless circle has no node to anchor it, so it is kept as a count of
free loops rather than an edge record.

Slot conventions, fixed once and used by every downstream module:

* Crossings are stored with the incoming over-end at slot 0, so the
  outgoing over-end is at slot 2 and the sign is +1 exactly when the
  incoming under-end sits at slot 1.
* A co-orientation is the strand direction rotated a quarter turn
  counterclockwise.  With that, the source region of a positive crossing
  is the corner at its incoming under-end, of a negative crossing the
  corner at its incoming over-end.
* Quadrant s of a node lies between rays s and s+1; faces are traversed
  keeping the face on the left, which lands arriving darts at slot s in
  quadrant s-1.
* Marked vertices are stored with a head end at slot 0 (ends alternate
  in/out around a saddle); the marker picks the opposite quadrant pair
  {m, m+2} and the positive resolution opens the vertex by joining slots
  (m, m+1) and (m+2, m+3).

Diagrams are values: constructors copy their inputs, operations build new
diagrams, nothing mutates a diagram after construction.
"""

from __future__ import annotations

HEAD = "head"
TAIL = "tail"


class Edge:
    """Oriented semi-arc from tail (node, slot) to head (node, slot)."""

    __slots__ = ("id", "tail", "head")

    def __init__(self, eid, tail, head):
        self.id = eid
        self.tail = tuple(tail)
        self.head = tuple(head)

    def end(self, which):
        return self.head if which == HEAD else self.tail

    def __repr__(self):
        return f"Edge({self.id}, {self.tail}->{self.head})"


def _rotate(ccw, k):
    return tuple(ccw[(i + k) % 4] for i in range(4))


class Crossing:
    """Crossing node; `over_in` names the slot of the incoming over-end in
    the given rotation.  Diagram construction renormalizes to slot 0."""

    kind = "crossing"
    __slots__ = ("id", "ccw", "over_in", "under_in")

    def __init__(self, nid, ccw, over_in=0):
        if len(ccw) != 4:
            raise ValueError(f"crossing {nid} needs exactly 4 ends")
        self.id = nid
        self.ccw = tuple(tuple(e) for e in ccw)
        self.over_in = over_in % 4
        self.under_in = None

    @property
    def sign(self):
        return 1 if self.under_in == 1 else -1

    def slots(self):
        """Map role -> slot, in the normalized rotation."""
        u = self.under_in
        return {"over_in": 0, "over_out": 2, "under_in": u,
                "under_out": (u + 2) % 4}

    def role_edges(self):
        return {role: self.ccw[slot][0]
                for role, slot in self.slots().items()}


class MarkedVertex:
    """Saddle node; marker in {0, 1} picks the quadrant pair {m, m+2}."""

    kind = "marked"
    __slots__ = ("id", "ccw", "marker")

    def __init__(self, nid, ccw, marker):
        if len(ccw) != 4:
            raise ValueError(f"marked vertex {nid} needs exactly 4 ends")
        if marker not in (0, 1):
            raise ValueError(f"marked vertex {nid}: marker must be 0 or 1")
        self.id = nid
        self.ccw = tuple(tuple(e) for e in ccw)
        self.marker = marker


def _copy_node(node):
    if node.kind == "crossing":
        return Crossing(node.id, node.ccw, node.over_in)
    return MarkedVertex(node.id, node.ccw, node.marker)


class Diagram:

    def __init__(self, edges, nodes, free_loops=0, unbounded_hint=None):
        self.edges = {}
        for e in edges:
            if e.id in self.edges:
                raise ValueError(f"duplicate edge id {e.id}")
            self.edges[e.id] = Edge(e.id, e.tail, e.head)
        self.nodes = {}
        for n in nodes:
            if n.id in self.nodes:
                raise ValueError(f"duplicate node id {n.id}")
            self.nodes[n.id] = _copy_node(n)
        self.free_loops = free_loops
        self.unbounded_hint = unbounded_hint
        self._faces = None
        self._face_of_dart = None
        self._check_ends()
        self._normalize()

    def _check_ends(self):
        seen = {}
        for node in self.nodes.values():
            for slot, (eid, which) in enumerate(node.ccw):
                if which not in (HEAD, TAIL):
                    raise ValueError(
                        f"node {node.id} slot {slot}: bad end tag {which!r}")
                if eid not in self.edges:
                    raise ValueError(
                        f"node {node.id} slot {slot}: unknown edge {eid}")
                key = (eid, which)
                if key in seen:
                    raise ValueError(
                        f"edge end {key} referenced twice "
                        f"(nodes {seen[key]} and {node.id})")
                seen[key] = node.id
        for e in self.edges.values():
            for which in (TAIL, HEAD):
                if (e.id, which) not in seen:
                    raise ValueError(f"edge {e.id} {which} end unattached")
                node, slot = e.end(which)
                if node not in self.nodes or \
                        self.nodes[node].ccw[slot % 4] != (e.id, which):
                    raise ValueError(
                        f"edge {e.id} {which} end disagrees with the node "
                        f"rotation table")

    def _normalize(self):
        for node in self.nodes.values():
            if node.kind == "crossing":
                node.ccw = _rotate(node.ccw, node.over_in)
                node.over_in = 0
                if node.ccw[0][1] != HEAD or node.ccw[2][1] != TAIL:
                    raise ValueError(
                        f"crossing {node.id}: over strand must run in "
                        f"opposite out")
                under_in = [s for s in (1, 3) if node.ccw[s][1] == HEAD]
                if len(under_in) != 1:
                    raise ValueError(
                        f"crossing {node.id}: under strand needs one "
                        f"incoming and one outgoing end")
                node.under_in = under_in[0]
            else:
                ins = sorted(s for s in range(4) if node.ccw[s][1] == HEAD)
                if ins not in ([0, 2], [1, 3]):
                    raise ValueError(
                        f"marked vertex {node.id}: ends must alternate "
                        f"in/out around the vertex")
                if ins[0] != 0:
                    # the marker names a quadrant pair, stable mod 2
                    node.ccw = _rotate(node.ccw, ins[0])
                    node.marker = (node.marker - ins[0]) % 2
        for node in self.nodes.values():
            for slot, (eid, which) in enumerate(node.ccw):
                e = self.edges[eid]
                if which == HEAD:
                    e.head = (node.id, slot)
                else:
                    e.tail = (node.id, slot)

    # --- darts and faces ---------------------------------------------

    def darts(self):
        for eid in sorted(self.edges):
            yield (eid, 1)
            yield (eid, -1)

    def dart_target(self, dart):
        """The (node, slot) this dart runs into."""
        eid, direction = dart
        e = self.edges[eid]
        return e.head if direction == 1 else e.tail

    def next_dart(self, dart):
        """Successor when traversing with the face on the left: arrive at
        slot s, leave along the end at slot s-1."""
        node_id, slot = self.dart_target(dart)
        eid, which = self.nodes[node_id].ccw[(slot - 1) % 4]
        return (eid, 1 if which == TAIL else -1)

    def faces(self):
        """Face orbits in deterministic order.  Region identity is only
        global on a connected diagram; per component the count satisfies
        the sphere Euler formula."""
        if self._faces is None:
            seen = {}
            faces = []
            for start in self.darts():
                if start in seen:
                    continue
                orbit = []
                d = start
                while True:
                    orbit.append(d)
                    seen[d] = len(faces)
                    d = self.next_dart(d)
                    if d == start:
                        break
                faces.append(tuple(orbit))
            self._faces = faces
            self._face_of_dart = seen
        return self._faces

    def face_of_dart(self, dart):
        self.faces()
        return self._face_of_dart[dart]

    def quadrant_face(self, node_id, slot):
        """Face filling quadrant `slot` of the node: the left face of the
        dart leaving through the end at that slot."""
        eid, which = self.nodes[node_id].ccw[slot]
        return self.face_of_dart((eid, 1 if which == TAIL else -1))

    def region_count(self):
        """Complementary plane regions, free loops included: each loop
        splits off one more region."""
        if not self.edges:
            return 1 + self.free_loops
        return len(self.faces()) + self.free_loops

    def unbounded_face(self):
        """Face index the hint designates as unbounded: the face left of
        the dart arriving at the hinted edge end.  None without a hint."""
        if self.unbounded_hint is None:
            return None
        eid, which = self.unbounded_hint
        return self.face_of_dart((eid, 1 if which == HEAD else -1))

    def components(self):
        """Node sets of the connected components; free loops not included."""
        parent = {nid: nid for nid in self.nodes}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges.values():
            a, b = find(e.tail[0]), find(e.head[0])
            if a != b:
                parent[a] = b
        groups = {}
        for nid in self.nodes:
            groups.setdefault(find(nid), set()).add(nid)
        return list(groups.values())

    def validate(self):
        """All structural problems, as strings; empty means valid."""
        problems = []
        faces = self.faces()
        if sum(len(f) for f in faces) != 2 * len(self.edges):
            problems.append("face boundaries do not cover each edge twice")
        for comp in self.components():
            e_count = sum(1 for e in self.edges.values()
                          if e.tail[0] in comp)
            f_count = len({i for i, f in enumerate(faces)
                           if self.dart_target(f[0])[0] in comp})
            euler = len(comp) - e_count + f_count
            if euler != 2:
                problems.append(
                    f"component {sorted(comp)}: V-E+F = {euler}, not 2 "
                    f"(not a sphere map)")
        return problems

    def require_valid(self):
        problems = self.validate()
        if problems:
            raise ValueError("; ".join(problems))
        return self

    # --- derived structure -------------------------------------------

    def crossings(self):
        return [self.nodes[i] for i in sorted(self.nodes)
                if self.nodes[i].kind == "crossing"]

    def marked_vertices(self):
        return [self.nodes[i] for i in sorted(self.nodes)
                if self.nodes[i].kind == "marked"]

    def writhe(self):
        return sum(c.sign for c in self.crossings())

    def source_region(self, node_id):
        """Face from which both co-orientations at the crossing point away:
        the corner between the two incoming ends."""
        node = self.nodes.get(node_id)
        if node is None or node.kind != "crossing":
            raise ValueError(f"node {node_id} is not a crossing")
        slot = node.under_in if node.sign == 1 else 0
        return self.quadrant_face(node_id, slot)

    def link_components(self):
        """Closed strands of a link diagram, as edge-id cycles, followed by
        one None per free loop.  Marked vertices have no strand structure,
        so they are rejected."""
        if self.marked_vertices():
            raise ValueError("link components are defined for link "
                             "diagrams only")
        succ = {}
        for node in self.crossings():
            s = node.slots()
            for a, b in ((s["over_in"], s["over_out"]),
                         (s["under_in"], s["under_out"])):
                succ[node.ccw[a][0]] = node.ccw[b][0]
        comps = []
        seen = set()
        for eid in sorted(succ):
            if eid in seen:
                continue
            cur, comp = eid, []
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                cur = succ[cur]
            comps.append(comp)
        return comps + [None] * self.free_loops

    def fresh_edge_id(self):
        return max(self.edges, default=0) + 1

    def fresh_node_id(self):
        return max(self.nodes, default=0) + 1

    # --- serialization -----------------------------------------------

    def to_json(self):
        nodes = []
        for nid in sorted(self.nodes):
            n = self.nodes[nid]
            rec = {"id": nid, "kind": n.kind,
                   "ccw": [[eid, which] for eid, which in n.ccw]}
            if n.kind == "crossing":
                rec["over"] = [0, 2]
            else:
                rec["marker"] = n.marker
            nodes.append(rec)
        data = {
            "edges": [{"id": e.id, "tail": list(e.tail),
                       "head": list(e.head)}
                      for e in sorted(self.edges.values(),
                                      key=lambda e: e.id)],
            "nodes": nodes,
            "free_loops": self.free_loops,
        }
        if self.unbounded_hint is not None:
            data["unbounded_face_hint"] = list(self.unbounded_hint)
        return data

    @classmethod
    def from_json(cls, data):
        edges = [Edge(e["id"], e["tail"], e["head"])
                 for e in data["edges"]]
        nodes = []
        for rec in data["nodes"]:
            ccw = [tuple(end) for end in rec["ccw"]]
            if rec["kind"] == "crossing":
                over_in = rec.get("over", [0, 2])[0]
                nodes.append(Crossing(rec["id"], ccw, over_in))
            elif rec["kind"] == "marked":
                nodes.append(MarkedVertex(rec["id"], ccw, rec["marker"]))
            else:
                raise ValueError(f"unknown node kind {rec['kind']!r}")
        hint = data.get("unbounded_face_hint")
        return cls(edges, nodes, data.get("free_loops", 0),
                   tuple(hint) if hint else None)


def crossing_sign(diagram, node_id):
    node = diagram.nodes.get(node_id)
    if node is None or node.kind != "crossing":
        raise ValueError(f"node {node_id} is not a crossing")
    return node.sign


def source_semiarcs(node):
    """Edge pair (under, over) of the two semi-arcs bounding the source
    region of a crossing; their colors are the weight arguments there."""
    e = node.role_edges()
    if node.sign == 1:
        return e["under_in"], e["over_out"]
    return e["under_out"], e["over_in"]


def crossing_relations(node):
    """Coloring constraints at a crossing, as (lhs, op, a, b) meaning
    color(lhs) = op(color(a), color(b)).  The pair (a, b) is always the
    (under, over) pair of semi-arcs adjacent to the source region."""
    e = node.role_edges()
    if node.sign == 1:
        alpha, beta = e["under_in"], e["over_out"]
        return [(e["under_out"], "under", alpha, beta),
                (e["over_in"], "over", beta, alpha)]
    alpha, beta = e["under_out"], e["over_in"]
    return [(e["under_in"], "under", alpha, beta),
            (e["over_out"], "over", beta, alpha)]


class Presentation:
    """Fundamental-biquandle data: one generator per semi-arc, relations
    from crossings and marked vertices."""

    def __init__(self, generators, relations):
        self.generators = list(generators)
        self.relations = list(relations)


def presentation(diagram):
    relations = []
    for nid in sorted(diagram.nodes):
        node = diagram.nodes[nid]
        if node.kind == "crossing":
            relations.extend(crossing_relations(node))
        else:
            first = node.ccw[0][0]
            relations.extend((node.ccw[s][0], "eq", first, None)
                             for s in (1, 2, 3))
    return Presentation(sorted(diagram.edges), relations)


def weld_and_splice(diagram, drop_nodes, drop_edges, welds):
    """Remove nodes, then merge the edges joined by the welds.

    Each weld is ((edge_a, HEAD), (edge_b, TAIL)): the strand arriving at a
    removed node along edge_a continues as edge_b.  Chains keep the minimal
    member id; a chain that closes on itself becomes a free loop.  Returns
    (new_diagram, edge_map, chains) where edge_map sends every surviving
    old edge id to its merged id and welded-away loops to ("loop", index),
    and chains lists (members, closed) in discovery order, closed chains
    last, matching the order free-loop indices are assigned.
    """
    drop_nodes = set(drop_nodes)
    drop_edges = set(drop_edges)
    nxt = {}
    prv = {}
    for (ea, wa), (eb, wb) in welds:
        if wa != HEAD or wb != TAIL:
            raise ValueError("welds must join a head end to a tail end")
        if ea in nxt or eb in prv:
            raise ValueError("edge end welded twice")
        nxt[ea] = eb
        prv[eb] = ea
    alive = [eid for eid in diagram.edges if eid not in drop_edges]
    edge_map = {}
    new_edges = []
    new_loops = 0
    loop_index = diagram.free_loops
    seen = set()
    chains = []
    for eid in sorted(alive):
        if eid in seen or eid in prv:
            continue
        chain = [eid]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        seen.update(chain)
        chains.append((tuple(chain), False))
        merged = min(chain)
        for member in chain:
            edge_map[member] = merged
        new_edges.append(Edge(merged, diagram.edges[chain[0]].tail,
                              diagram.edges[chain[-1]].head))
    for eid in sorted(alive):
        if eid in seen:
            continue
        # chains with no start are circles closed entirely by welds
        chain = [eid]
        while nxt[chain[-1]] != eid:
            chain.append(nxt[chain[-1]])
        seen.update(chain)
        chains.append((tuple(chain), True))
        for member in chain:
            edge_map[member] = ("loop", loop_index)
        loop_index += 1
        new_loops += 1
    new_nodes = []
    for nid in sorted(diagram.nodes):
        if nid in drop_nodes:
            continue
        node = diagram.nodes[nid]
        ccw = tuple((edge_map[eid], which) for eid, which in node.ccw)
        if node.kind == "crossing":
            new_nodes.append(Crossing(nid, ccw, 0))
        else:
            new_nodes.append(MarkedVertex(nid, ccw, node.marker))
    out = Diagram(new_edges, new_nodes, diagram.free_loops + new_loops, None)
    return out, edge_map, chains


def resolution_welds(diagram, sign):
    """(drop_nodes, welds) opening every marked vertex: + joins slots
    (m, m+1) and (m+2, m+3), - joins slots (m+1, m+2) and (m+3, m)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    drop = []
    welds = []
    for node in diagram.marked_vertices():
        drop.append(node.id)
        m = node.marker
        if sign == 1:
            pairs = [(m, m + 1), (m + 2, m + 3)]
        else:
            pairs = [(m + 1, m + 2), (m + 3, m)]
        for a, b in pairs:
            ea = node.ccw[a % 4]
            eb = node.ccw[b % 4]
            if ea[1] == TAIL:
                ea, eb = eb, ea
            welds.append((ea, eb))
    return drop, welds


def resolve(diagram, sign):
    """Open every marked vertex into the chosen smoothing."""
    drop, welds = resolution_welds(diagram, sign)
    out, _, _ = weld_and_splice(diagram, drop, [], welds)
    return out
