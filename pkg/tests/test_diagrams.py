"""Diagram layer: fixtures, rotation-system bookkeeping, and the
straight-line geometry cross-checks of signs and source regions."""

import json

import pytest

from biquandle.diagrams import (
    HEAD,
    TAIL,
    Crossing,
    Diagram,
    Edge,
    MarkedVertex,
    crossing_sign,
    presentation,
    resolve,
)
from biquandle.library import NAMED_DIAGRAMS, braid_closure, named_diagram

from geometry_oracle import braid_geometry, geometric_sign, source_sector

BRAID_WORDS = {
    "unlink2": ([], 2),
    "kink_plus": ([1], 2),
    "kink_minus": ([-1], 2),
    "hopf": ([1, 1], 2),
    "trefoil": ([1, 1, 1], 2),
    "figure_eight": ([1, -2, 1, -2], 3),
    "solomon": ([1, 1, 1, 1], 2),
    "five_one": ([1, 1, 1, 1, 1], 2),
}

# name -> (V, E, F, writhe, free_loops)
FIXTURE_SHAPES = {
    "unknot0": (0, 0, 0, 0, 1),
    "unlink2": (0, 0, 0, 0, 2),
    "kink_plus": (1, 2, 3, 1, 0),
    "kink_minus": (1, 2, 3, -1, 0),
    "hopf": (2, 4, 4, 2, 0),
    "trefoil": (3, 6, 5, 3, 0),
    "figure_eight": (4, 8, 6, 0, 0),
    "solomon": (4, 8, 6, 4, 0),
    "five_one": (5, 10, 7, 5, 0),
    "bowtie_sphere": (1, 2, 3, 0, 0),
}


def test_fixture_shapes():
    for name, (v, e, f, w, loops) in FIXTURE_SHAPES.items():
        d = named_diagram(name)
        assert d.validate() == []
        assert len(d.nodes) == v, name
        assert len(d.edges) == e, name
        assert len(d.faces()) == f, name
        assert d.free_loops == loops, name
        if not d.marked_vertices():
            assert d.writhe() == w, name


def test_every_named_diagram_is_covered():
    assert set(NAMED_DIAGRAMS) == set(FIXTURE_SHAPES)


def test_region_count_includes_free_loops():
    assert named_diagram("unknot0").region_count() == 2
    assert named_diagram("unlink2").region_count() == 3
    assert named_diagram("trefoil").region_count() == 5
    assert Diagram([], []).region_count() == 1


def test_link_components():
    t = named_diagram("trefoil")
    comps = t.link_components()
    assert len(comps) == 1
    assert sorted(comps[0]) == sorted(t.edges)
    assert len(named_diagram("hopf").link_components()) == 2
    assert len(named_diagram("solomon").link_components()) == 2
    assert len(named_diagram("figure_eight").link_components()) == 1
    assert named_diagram("unlink2").link_components() == [None, None]
    with pytest.raises(ValueError):
        named_diagram("bowtie_sphere").link_components()


def test_braid_word_validation():
    with pytest.raises(ValueError):
        braid_closure([0], 2)
    with pytest.raises(ValueError):
        braid_closure([2], 2)


# --- geometric cross-checks --------------------------------------------


def geometry_pairs():
    for name, (word, strands) in BRAID_WORDS.items():
        if not word:
            continue
        yield name, named_diagram(name), braid_geometry(word, strands)


def test_signs_match_geometry():
    for name, diagram, geo in geometry_pairs():
        assert len(geo) == len(diagram.nodes), name
        for rec in geo:
            assert crossing_sign(diagram, rec["node"]) == \
                geometric_sign(rec), (name, rec["node"])


def test_rotation_tables_match_geometry():
    # stored ccw must be a rotation of the true angular order
    for name, diagram, geo in geometry_pairs():
        for rec in geo:
            stored = list(diagram.nodes[rec["node"]].ccw)
            want = [tuple(r) for r in rec["ccw"]]
            rotations = [want[k:] + want[:k] for k in range(4)]
            assert stored in rotations, (name, rec["node"])


def test_source_regions_match_geometry():
    # the sector with both co-orientations outward, located by its
    # counterclockwise-first boundary ray
    for name, diagram, geo in geometry_pairs():
        for rec in geo:
            end_a, _ = source_sector(rec)
            node = diagram.nodes[rec["node"]]
            slot = node.ccw.index(end_a)
            assert diagram.source_region(rec["node"]) == \
                diagram.quadrant_face(rec["node"], slot), (name, rec["node"])


def test_source_region_role_pattern():
    # positive: corner bounded by under_in and over_out; negative: by
    # over_in and under_out
    for name in ("trefoil", "figure_eight", "kink_minus"):
        d = named_diagram(name)
        for c in d.crossings():
            src = d.source_region(c.id)
            slot = c.under_in if c.sign == 1 else 0
            assert src == d.quadrant_face(c.id, slot)
            with pytest.raises(ValueError):
                crossing_sign(d, c.id + 1000)  # unknown node
            break


def test_source_region_rejects_marked_vertex():
    b = named_diagram("bowtie_sphere")
    with pytest.raises(ValueError):
        b.source_region(1)


# --- resolutions -------------------------------------------------------


def test_bowtie_resolutions():
    b = named_diagram("bowtie_sphere")
    plus = resolve(b, 1)
    minus = resolve(b, -1)
    assert (len(plus.edges), plus.free_loops) == (0, 2)
    assert (len(minus.edges), minus.free_loops) == (0, 1)
    assert plus.validate() == [] and minus.validate() == []


def test_resolve_leaves_links_alone():
    t = named_diagram("trefoil")
    r = resolve(t, 1)
    assert r.to_json() == t.to_json()
    with pytest.raises(ValueError):
        resolve(t, 0)


def test_resolve_other_marker():
    # flipping the marker swaps which resolution splits
    b = named_diagram("bowtie_sphere")
    data = b.to_json()
    data["nodes"][0]["marker"] = 1
    b2 = Diagram.from_json(data)
    assert resolve(b2, 1).free_loops == 1
    assert resolve(b2, -1).free_loops == 2


# --- presentations -----------------------------------------------------


def test_kink_presentation():
    p = presentation(named_diagram("kink_plus"))
    assert p.generators == [1, 2]
    # the through edge expressed both ways from the loop edge
    assert sorted(p.relations) == [(1, "over", 2, 2), (1, "under", 2, 2)]


def test_trefoil_presentation_counts():
    p = presentation(named_diagram("trefoil"))
    assert len(p.generators) == 6
    assert len(p.relations) == 6
    assert all(lhs in p.generators and a in p.generators
               and b in p.generators
               for lhs, _, a, b in p.relations)


def test_marked_vertex_presentation():
    p = presentation(named_diagram("bowtie_sphere"))
    assert len(p.relations) == 3
    assert all(r[1] == "eq" for r in p.relations)


def test_presentation_counts_formula():
    d = named_diagram("figure_eight")
    p = presentation(d)
    assert len(p.relations) == 2 * len(d.crossings())


# --- serialization and normalization -----------------------------------


def test_json_roundtrip():
    for name in FIXTURE_SHAPES:
        d = named_diagram(name)
        data = json.loads(json.dumps(d.to_json()))
        assert Diagram.from_json(data).to_json() == d.to_json(), name


def test_json_rotation_invariance():
    # presenting a crossing's rotation from a different starting slot
    # must normalize to the same diagram
    data = named_diagram("trefoil").to_json()
    node = data["nodes"][0]
    r = 3
    node["ccw"] = node["ccw"][r:] + node["ccw"][:r]
    node["over"] = [(0 - r) % 4, (2 - r) % 4]
    for e in data["edges"]:
        for key in ("tail", "head"):
            if e[key][0] == node["id"]:
                e[key][1] = (e[key][1] - r) % 4
    assert Diagram.from_json(data).to_json() == \
        named_diagram("trefoil").to_json()


def test_unbounded_face_hint():
    data = named_diagram("trefoil").to_json()
    data["unbounded_face_hint"] = [1, "head"]
    d = Diagram.from_json(data)
    assert d.unbounded_face() == d.face_of_dart((1, 1))
    assert named_diagram("trefoil").unbounded_face() is None
    assert Diagram.from_json(d.to_json()).unbounded_hint == (1, "head")


def test_bad_inputs_rejected():
    with pytest.raises(ValueError, match="unknown node kind"):
        Diagram.from_json({"edges": [], "nodes": [
            {"id": 1, "kind": "mystery", "ccw": []}]})
    e = Edge(1, (1, 0), (1, 1))
    with pytest.raises(ValueError, match="exactly 4 ends"):
        Crossing(1, [(1, HEAD)])
    with pytest.raises(ValueError, match="marker"):
        MarkedVertex(1, [(1, HEAD)] * 4, marker=2)
    # both under ends incoming
    ccw = [(1, HEAD), (2, HEAD), (1, TAIL), (2, HEAD)]
    with pytest.raises(ValueError):
        Diagram([Edge(1, (1, 2), (1, 0)), Edge(2, (1, 9), (1, 1))],
                [Crossing(1, ccw)])
    # marked vertex ends must alternate in/out
    ccw = [(1, HEAD), (1, TAIL), (2, TAIL), (2, HEAD)]
    with pytest.raises(ValueError, match="alternate"):
        Diagram([Edge(1, (1, 1), (1, 0)), Edge(2, (1, 2), (1, 3))],
                [MarkedVertex(1, ccw, 0)])
    with pytest.raises(ValueError, match="duplicate edge"):
        Diagram([e, e], [])


def test_end_consistency_enforced():
    data = named_diagram("hopf").to_json()
    data["edges"][0]["tail"][1] = (data["edges"][0]["tail"][1] + 1) % 4
    with pytest.raises(ValueError, match="disagrees|referenced twice"):
        Diagram.from_json(data)


def test_validate_catches_nonplanar_map():
    # swapping the two under ends at one crossing rewires the hopf link
    # into a map on the torus
    data = named_diagram("hopf").to_json()
    node = data["nodes"][0]
    node["ccw"][1], node["ccw"][3] = node["ccw"][3], node["ccw"][1]
    for e in data["edges"]:
        for key in ("tail", "head"):
            end = e[key]
            if end[0] == node["id"] and end[1] in (1, 3):
                end[1] = 4 - end[1]
    d = Diagram.from_json(data)
    assert any("not a sphere map" in p for p in d.validate())
    with pytest.raises(ValueError):
        d.require_valid()


def test_diagrams_are_values():
    # construction copies inputs; later mutation of the source objects
    # must not leak in
    e1 = Edge(1, (1, 1), (1, 0))
    e2 = Edge(2, (1, 3), (1, 2))
    v = MarkedVertex(1, [(1, HEAD), (1, TAIL), (2, HEAD), (2, TAIL)], 0)
    d = Diagram([e1, e2], [v])
    e1.tail = (9, 9)
    assert d.edges[1].tail == (1, 1)
    d2 = resolve(d, 1)
    assert d2.free_loops == 2
    assert d.to_json()["nodes"][0]["marker"] == 0
