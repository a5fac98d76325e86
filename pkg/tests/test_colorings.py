"""Coloring solver against brute-force relation filtering, classical
counts, and the shadow extension against exhaustive region assignment."""

import itertools

import pytest

from biquandle.colorings import (
    Coloring,
    ShadowColoring,
    enumerate_colorings,
    enumerate_shadow_colorings,
    extend_to_shadow,
    is_coloring,
)
from biquandle.diagrams import Diagram, crossing_relations
from biquandle.library import named_biquandle, named_diagram
from biquandle.tables import singleton_xset, under_action


def brute_force_colorings(diagram, biq):
    """Filter all assignments through the per-crossing relations, using
    the relation records rather than the solver's frame."""
    edge_ids = sorted(diagram.edges)
    out = []
    for combo in itertools.product(range(biq.n), repeat=len(edge_ids)):
        colors = dict(zip(edge_ids, combo))
        ok = True
        for node in diagram.nodes.values():
            if node.kind == "marked":
                if len({colors[e] for e, _ in node.ccw}) != 1:
                    ok = False
                    break
                continue
            for lhs, op, a, b in crossing_relations(node):
                fn = biq.under if op == "under" else biq.over
                if colors[lhs] != fn(colors[a], colors[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for loops in itertools.product(range(biq.n),
                                           repeat=diagram.free_loops):
                out.append(Coloring(colors, loops))
    return sorted(out, key=lambda c: c._key())


def test_solver_matches_brute_force():
    cases = [
        ("trefoil", "dihedral3"),
        ("trefoil", "cyclic4"),
        ("trefoil", "alexander4_3_1"),
        ("figure_eight", "dihedral3"),
        ("figure_eight", "cyclic4"),
        ("hopf", "alexander4_3_1"),
        ("kink_plus", "cyclic4"),
        ("kink_minus", "alexander4_3_1"),
        ("bowtie_sphere", "dihedral3"),
        ("unlink2", "dihedral3"),
        ("solomon", "cyclic4"),
    ]
    for dname, bname in cases:
        d = named_diagram(dname)
        biq = named_biquandle(bname)
        got = enumerate_colorings(d, biq)
        want = brute_force_colorings(d, biq)
        assert got == want, (dname, bname)
        assert all(is_coloring(d, biq, c) for c in got)


def test_trivial_biquandle_counts_components():
    biq = named_biquandle("trivial3")
    for name, comps in [("trefoil", 1), ("figure_eight", 1), ("hopf", 2),
                        ("solomon", 2), ("unlink2", 2), ("unknot0", 1),
                        ("kink_plus", 1), ("bowtie_sphere", 1)]:
        d = named_diagram(name)
        assert len(enumerate_colorings(d, biq)) == 3 ** comps, name


def test_classical_fox_counts():
    d3 = named_biquandle("dihedral3")
    assert len(enumerate_colorings(named_diagram("trefoil"), d3)) == 9
    assert len(enumerate_colorings(named_diagram("figure_eight"), d3)) == 3
    assert len(enumerate_colorings(named_diagram("hopf"), d3)) == 3
    d5 = named_biquandle("dihedral5")
    assert len(enumerate_colorings(named_diagram("five_one"), d5)) == 25
    assert len(enumerate_colorings(named_diagram("trefoil"), d5)) == 5


def test_kink_has_one_coloring_per_color():
    # the loop color is forced by the through color at a kink
    for bname in ("dihedral3", "alexander4_3_1", "cyclic4"):
        biq = named_biquandle(bname)
        for dname in ("kink_plus", "kink_minus"):
            cols = enumerate_colorings(named_diagram(dname), biq)
            assert len(cols) == biq.n, (dname, bname)


def test_enumeration_is_deterministic():
    d = named_diagram("figure_eight")
    biq = named_biquandle("cyclic4")
    assert enumerate_colorings(d, biq) == enumerate_colorings(d, biq)


def test_free_loop_colors_enumerated():
    d = named_diagram("unknot0")
    biq = named_biquandle("dihedral3")
    cols = enumerate_colorings(d, biq)
    assert [c.loops for c in cols] == [(0,), (1,), (2,)]
    assert is_coloring(d, biq, cols[0])
    assert not is_coloring(d, biq, Coloring({}, ()))


def test_is_coloring_rejects_bad_assignments():
    d = named_diagram("trefoil")
    biq = named_biquandle("dihedral3")
    good = enumerate_colorings(d, biq)[0]
    bad = dict(good.edges)
    bad[1] = (bad[1] + 1) % 3
    assert not is_coloring(d, biq, Coloring(bad))
    assert not is_coloring(d, biq, Coloring({1: 0}))
    assert not is_coloring(d, biq, Coloring({e: 5 for e in d.edges}))


def test_coloring_json_roundtrip():
    d = named_diagram("unknot0")
    biq = named_biquandle("dihedral3")
    for c in enumerate_colorings(d, biq):
        assert Coloring.from_json(c.to_json()) == c
    c = enumerate_colorings(named_diagram("trefoil"), biq)[3]
    assert Coloring.from_json(c.to_json()) == c


# --- shadow extensions -------------------------------------------------


def brute_force_shadows(diagram, biq, xset, base):
    """All region maps satisfying the across-edge rule, by exhaustion."""
    faces = range(len(diagram.faces()))
    out = []
    for combo in itertools.product(range(xset.m), repeat=len(faces)):
        regions = dict(zip(faces, combo))
        ok = all(
            regions[diagram.face_of_dart((eid, 1))]
            == xset.apply(base[eid], regions[diagram.face_of_dart((eid, -1))])
            for eid in diagram.edges)
        if ok:
            out.append(ShadowColoring(base, regions))
    return out


def test_shadow_extension_matches_brute_force():
    d = named_diagram("trefoil")
    biq = named_biquandle("dihedral3")
    xset = under_action(biq)
    for base in enumerate_colorings(d, biq):
        brute = brute_force_shadows(d, biq, xset, base)
        assert len(brute) == xset.m
        for y in range(xset.m):
            ext = extend_to_shadow(d, biq, base, xset, (0, y))
            assert ext is not None
            assert ext in brute
            assert ext.region(0) == y


def test_shadow_extension_every_seed_face():
    # any face works as the seed, not just face 0
    d = named_diagram("hopf")
    biq = named_biquandle("cyclic4")
    xset = under_action(biq)
    base = enumerate_colorings(d, biq)[2]
    want = {extend_to_shadow(d, biq, base, xset, (0, y))
            for y in range(xset.m)}
    for f in range(len(d.faces())):
        got = {extend_to_shadow(d, biq, base, xset, (f, y))
               for y in range(xset.m)}
        assert got == want


def test_shadow_count_is_base_count_times_y():
    for dname, bname in [("trefoil", "dihedral3"), ("hopf", "cyclic4"),
                         ("kink_plus", "alexander4_3_1")]:
        d = named_diagram(dname)
        biq = named_biquandle(bname)
        for xset in (under_action(biq), singleton_xset(biq)):
            base = enumerate_colorings(d, biq)
            shadows = enumerate_shadow_colorings(d, biq, xset)
            assert len(shadows) == len(base) * xset.m, (dname, bname)
            assert len(set(shadows)) == len(shadows)


def test_shadow_rejects_disconnected():
    biq = named_biquandle("dihedral3")
    xset = under_action(biq)
    d = named_diagram("unknot0")
    with pytest.raises(ValueError, match="connected"):
        extend_to_shadow(d, biq, enumerate_colorings(d, biq)[0], xset,
                         (0, 0))
    # two trefoils side by side
    data = named_diagram("trefoil").to_json()
    far = named_diagram("trefoil").to_json()
    for e in far["edges"]:
        e["id"] += 100
        for key in ("tail", "head"):
            e[key][0] += 100
    for nrec in far["nodes"]:
        nrec["id"] += 100
        nrec["ccw"] = [[eid + 100, w] for eid, w in nrec["ccw"]]
    data["edges"] += far["edges"]
    data["nodes"] += far["nodes"]
    two = Diagram.from_json(data)
    assert two.validate() == []
    base = enumerate_colorings(two, biq)[0]
    with pytest.raises(ValueError, match="connected"):
        extend_to_shadow(two, biq, base, xset, (0, 0))


def test_shadow_json_roundtrip():
    d = named_diagram("trefoil")
    biq = named_biquandle("cyclic4")
    xset = under_action(biq)
    base = enumerate_colorings(d, biq)[1]
    ext = extend_to_shadow(d, biq, base, xset, (0, 2))
    assert ShadowColoring.from_json(ext.to_json()) == ext


def test_shadow_bad_seed_face():
    d = named_diagram("trefoil")
    biq = named_biquandle("dihedral3")
    base = enumerate_colorings(d, biq)[0]
    with pytest.raises(ValueError, match="face"):
        extend_to_shadow(d, biq, base, under_action(biq), (99, 0))
