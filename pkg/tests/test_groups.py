"""Coefficient groups and group ring arithmetic."""

import pytest

from biquandle.groups import FinAbGroup, GroupRingElement


def test_group_basics():
    g = FinAbGroup([2, 4])
    assert g.order() == 8
    assert g.identity == (0, 0)
    assert g.add((1, 3), (1, 2)) == (0, 1)
    assert g.neg((1, 3)) == (1, 1)
    assert g.scale((1, 1), 3) == (1, 3)
    assert len(list(g.elements())) == 8
    assert g.reduce((5, -1)) == (1, 3)


def test_group_names():
    assert FinAbGroup.from_name("Z2").moduli == (2,)
    assert FinAbGroup.from_name("Z2xZ4").moduli == (2, 4)
    assert FinAbGroup.from_name("z6").moduli == (6,)
    with pytest.raises(ValueError):
        FinAbGroup.from_name("Q")
    with pytest.raises(ValueError):
        FinAbGroup([1])


def test_group_json_roundtrip():
    g = FinAbGroup([3, 9])
    assert FinAbGroup.from_json(g.to_json()) == g


def test_ring_add_mul():
    g = FinAbGroup([2])
    one = GroupRingElement.monomial(g, (0,))
    t = GroupRingElement.monomial(g, (1,))
    val = 4 * one + 12 * t
    assert str(val) == "4 + 12*t"
    assert val == one * 4 + t * 12
    assert (t * t) == one
    assert (val - val).is_zero()
    assert str(GroupRingElement.zero(g)) == "0"


def test_ring_render_multi_factor():
    g = FinAbGroup([2, 3])
    x = GroupRingElement.monomial(g, (1, 0))
    y = GroupRingElement.monomial(g, (0, 2))
    assert str(x) == "t1"
    assert str(y) == "t2^2"
    assert str(x * y + x * y) == "2*t1*t2^2"
    # terms are ordered by exponent tuple
    assert str(x - y) == "-t2^2 + t1"
    assert str(y - x) == "t2^2 - t1"


def test_ring_render_signs():
    g = FinAbGroup([2])
    one = GroupRingElement.monomial(g, (0,))
    t = GroupRingElement.monomial(g, (1,))
    assert str(one - t) == "1 - t"
    assert str(t - one) == "-1 + t"
    assert str(-1 * t) == "-t"


def test_ring_group_mismatch():
    a = GroupRingElement.monomial(FinAbGroup([2]), (1,))
    b = GroupRingElement.monomial(FinAbGroup([3]), (1,))
    with pytest.raises(ValueError):
        _ = a + b


def test_ring_json_roundtrip():
    g = FinAbGroup([2, 4])
    v = (GroupRingElement.monomial(g, (1, 2), 5)
         - GroupRingElement.monomial(g, (0, 1), 2))
    data = v.to_json()
    assert data["terms"] == sorted(data["terms"], key=lambda t: t["elem"])
    assert GroupRingElement.from_json(g, data) == v


def test_ring_convolution():
    g = FinAbGroup([4])
    t = GroupRingElement.monomial(g, (1,))
    p = t + t * t
    q = p * p
    # (t + t^2)^2 = t^2 + 2 t^3 + t^4 = 1 + t^2 + 2 t^3
    assert q.terms == {(0,): 1, (2,): 1, (3,): 2}
