"""Biquandle axioms, standard families, and maps between tables."""

import pytest

from biquandle.library import cyclic_order4_biquandle, named_biquandle
from biquandle.tables import (
    Biquandle,
    XSetAction,
    alexander_biquandle,
    are_isomorphic,
    dihedral_quandle,
    enumerate_homs,
    quandle_as_biquandle,
    singleton_xset,
    trivial_biquandle,
    under_action,
)


def test_trivial_and_dihedral_are_valid():
    assert trivial_biquandle(5).verify() == []
    assert dihedral_quandle(3).verify() == []
    assert dihedral_quandle(6).verify() == []
    assert dihedral_quandle(3).is_quandle()


def test_alexander_tables_frozen():
    bq = alexander_biquandle(4, 3, 1)
    assert bq.verify() == []
    assert not bq.is_quandle()
    # under(x, y) = x + 2y and over(x, y) = 3x mod 4, written out
    assert bq.under_table == (
        (0, 2, 0, 2),
        (1, 3, 1, 3),
        (2, 0, 2, 0),
        (3, 1, 3, 1),
    )
    assert bq.over_table == (
        (0, 0, 0, 0),
        (3, 3, 3, 3),
        (2, 2, 2, 2),
        (1, 1, 1, 1),
    )


def test_alexander_rejects_nonunits():
    with pytest.raises(ValueError):
        alexander_biquandle(4, 2, 1)
    with pytest.raises(ValueError):
        alexander_biquandle(6, 1, 3)


def test_cyclic4_is_valid_and_not_alexander():
    bq = cyclic_order4_biquandle()
    assert bq.verify() == []
    assert not bq.is_quandle()
    for s in (1, 3):
        for t in (1, 3):
            assert not are_isomorphic(bq, alexander_biquandle(4, s, t))


def test_verify_witnesses():
    # break idempotence at 0
    bq = Biquandle([[1, 0], [0, 1]], [[0, 0], [1, 1]])
    tags = {w[0] for w in bq.verify()}
    assert "B1" in tags
    # break column bijectivity
    bq = Biquandle([[0, 0], [1, 0]], [[0, 0], [1, 1]])
    assert ("B2", ("under", 1)) in bq.verify()
    with pytest.raises(ValueError):
        bq.require_valid()


def test_table_shape_errors():
    with pytest.raises(ValueError):
        Biquandle([[0, 1]], [[0]])
    with pytest.raises(ValueError):
        Biquandle([[0, 2], [1, 0]], [[0, 0], [1, 1]])


def test_inverses():
    bq = cyclic_order4_biquandle()
    for y in range(4):
        for x in range(4):
            assert bq.under_inv(bq.under(x, y), y) == x
            assert bq.over_inv(bq.over(x, y), y) == x
    for x in range(4):
        for y in range(4):
            assert bq.pair_map_inv(*bq.pair_map(x, y)) == (x, y)
    for x in range(4):
        assert bq.kink_inv(bq.under(x, x)) == x


def test_quandle_embedding():
    table = [[(2 * y - x) % 3 for y in range(3)] for x in range(3)]
    bq = quandle_as_biquandle(table)
    assert bq.is_quandle()
    assert bq == dihedral_quandle(3)
    with pytest.raises(ValueError):
        quandle_as_biquandle([[1, 0], [0, 1]])


def test_homs_and_isos():
    t2, t3 = trivial_biquandle(2), trivial_biquandle(3)
    # every map respects trivial operations
    assert len(enumerate_homs(t2, t3)) == 9
    d3 = dihedral_quandle(3)
    homs = enumerate_homs(d3, d3)
    # three constants plus six symmetries of the triangle
    assert len(homs) == 9
    assert (0, 1, 2) in homs
    assert all((c, c, c) in homs for c in range(3))
    assert are_isomorphic(d3, d3.relabel((2, 0, 1)))
    assert not are_isomorphic(d3, t3)


def test_relabel_roundtrip():
    bq = cyclic_order4_biquandle()
    perm = (2, 0, 3, 1)
    inv = (1, 3, 0, 2)
    assert bq.relabel(perm).relabel(inv) == bq
    assert bq.relabel(perm).verify() == []


def test_canonical_form_is_iso_invariant():
    bq = cyclic_order4_biquandle()
    assert bq.relabel((1, 2, 3, 0)).canonical_form() == bq.canonical_form()
    assert alexander_biquandle(4, 3, 1).canonical_form() != bq.canonical_form()


def test_json_roundtrip():
    bq = cyclic_order4_biquandle()
    assert Biquandle.from_json(bq.to_json()) == bq
    with pytest.raises(ValueError):
        Biquandle.from_json({"n": 2, "under": [[0, 0], [1, 1]]})
    bad = bq.to_json()
    bad["n"] = 5
    with pytest.raises(ValueError):
        Biquandle.from_json(bad)


def test_under_action_is_valid():
    for name in ("trivial2", "dihedral3", "alexander4_3_1", "cyclic4"):
        bq = named_biquandle(name)
        xs = under_action(bq)
        assert xs.verify() == []
        assert singleton_xset(bq).verify() == []


def test_xset_apply_inverse():
    bq = cyclic_order4_biquandle()
    xs = under_action(bq)
    for x in range(4):
        for y in range(4):
            assert xs.apply_inv(x, xs.apply(x, y)) == y


def test_xset_violation_witness():
    # over a trivial biquandle the exchange law says the act maps commute
    bq = trivial_biquandle(2)
    good = XSetAction(bq, [[1, 0, 2], [0, 2, 1]])
    bad = good.verify()
    assert bad and bad[0][0] == "action"
    assert XSetAction(bq, [[1, 0, 2], [1, 0, 2]]).verify() == []
    assert XSetAction(bq, [[0, 0, 1], [0, 1, 2]]).verify()[0][0] == "bijective"


def test_xset_json_roundtrip():
    bq = cyclic_order4_biquandle()
    xs = under_action(bq)
    assert XSetAction.from_json(bq, xs.to_json()).act == xs.act
