"""Cocycle state-sum invariants assembled from colorings and weights.

Link diagrams pair a 2-cocycle weight with every crossing; marked graph
diagrams pair a 3-cocycle weight with every slide event of a pair of
reduction scripts, one per resolution.  Shadow versions carry a region
color as an extra first argument.  Weights accumulate additively in the
coefficient group and the per-coloring totals are summed in the group
ring, so every value is exact.
"""

from .cocycles import check_cocycle, cohomologous
from .colorings import enumerate_colorings, enumerate_shadow_colorings
from .groups import GroupRingElement
from .moves import resolve_transport, run_script, sides_from_shadow


class StateSumError(ValueError):
    """Domain failure while assembling a state-sum."""


class StateSumResult:
    """Group-ring value with the coloring count and an optional trace of
    per-coloring weights (coloring, weight) in enumeration order."""

    __slots__ = ("value", "coloring_count", "trace")

    def __init__(self, value, coloring_count, trace=None):
        self.value = value
        self.coloring_count = coloring_count
        self.trace = None if trace is None else tuple(trace)

    def __repr__(self):
        return (f"StateSumResult(value={self.value}, "
                f"colorings={self.coloring_count})")

    def to_json(self):
        data = {"value": self.value.to_json(),
                "coloring_count": self.coloring_count}
        if self.trace is not None:
            data["trace"] = [
                {"coloring": col.to_json(), "weight": list(w)}
                for col, w in self.trace]
        return data


def _require_cocycle(table, arity, shadow, what):
    kind = "shadow " if shadow else ""
    if table.arity != arity or table.shadow != shadow:
        raise StateSumError(
            f"{what} needs a {kind}{arity}-cochain table, got "
            f"{'shadow ' if table.shadow else ''}arity {table.arity}")
    witnesses = check_cocycle(table)
    if witnesses:
        cond, key = witnesses[0]
        raise StateSumError(
            f"{what}: weight table fails the cocycle condition "
            f"({cond} at {key}, {len(witnesses)} witnesses)")


def crossing_weight_edges(node):
    """Edges whose colors feed the crossing weight: the under and over
    semi-arcs bounding the source region."""
    roles = node.role_edges()
    if node.sign == 1:
        return roles["under_in"], roles["over_out"]
    return roles["under_out"], roles["over_in"]


def _link_sum(diagram, biq, table, xset, keep_trace, what):
    if diagram.marked_vertices():
        raise StateSumError(f"{what} needs a link diagram; resolve "
                            f"marked vertices first")
    group = table.group
    if xset is None:
        colorings = enumerate_colorings(diagram, biq)
    else:
        colorings = enumerate_shadow_colorings(diagram, biq, xset)
    value = GroupRingElement.zero(group)
    trace = [] if keep_trace else None
    for col in colorings:
        acc = group.identity
        for node in diagram.crossings():
            ea, eb = crossing_weight_edges(node)
            if xset is None:
                w = table(col[ea], col[eb])
            else:
                y = col.regions[diagram.source_region(node.id)]
                w = table(y, col[ea], col[eb])
            if node.sign == -1:
                w = group.neg(w)
            acc = group.add(acc, w)
        value += GroupRingElement.monomial(group, acc)
        if trace is not None:
            trace.append((col, acc))
    return StateSumResult(value, len(colorings), trace)


def link_state_sum(diagram, biq, phi, keep_trace=False):
    """State-sum over colorings with weight phi(a, b)^sign per crossing,
    a and b read at the source region."""
    _require_cocycle(phi, 2, False, "link_state_sum")
    return _link_sum(diagram, biq, phi, None, keep_trace, "link_state_sum")


def shadow_link_state_sum(diagram, biq, xset, theta, keep_trace=False):
    """Shadow state-sum: weight theta(y, a, b)^sign with y the source
    region color."""
    _require_cocycle(theta, 2, True, "shadow_link_state_sum")
    return _link_sum(diagram, biq, theta, xset, keep_trace,
                     "shadow_link_state_sum")


def _script_events(diagram, script_plus, script_minus, colorings, biq,
                   xset=None, sides=None):
    """Slide events of both reduction scripts, transported per coloring.
    Returns {+1: events, -1: events}, each a tuple per coloring."""
    out = {}
    for sign, script in ((1, script_plus), (-1, script_minus)):
        name = "positive" if sign == 1 else "negative"
        resolved, cols, ssides = resolve_transport(
            diagram, sign, colorings, sides=sides, xset=xset)
        result = run_script(resolved, script, cols, biq, xset=xset,
                            sides=ssides)
        left = len(result.final.crossings())
        if left:
            raise StateSumError(
                f"{name} resolution: script is not admissible, "
                f"{left} crossings remain")
        out[sign] = result.events
    return out


def surface_state_sum(diagram, script_plus, script_minus, biq, theta,
                      keep_trace=False):
    """State-sum over colorings of a marked graph diagram: every slide
    event of the plus script weighs theta(x1, x2, x3)^exponent, every
    event of the minus script contributes the inverse."""
    _require_cocycle(theta, 3, False, "surface_state_sum")
    group = theta.group
    colorings = enumerate_colorings(diagram, biq)
    events = _script_events(diagram, script_plus, script_minus,
                            colorings, biq)
    value = GroupRingElement.zero(group)
    trace = [] if keep_trace else None
    for j, col in enumerate(colorings):
        acc = group.identity
        for sign in (1, -1):
            for ev in events[sign][j]:
                w = group.scale(theta(ev.x1, ev.x2, ev.x3),
                                sign * ev.exponent)
                acc = group.add(acc, w)
        value += GroupRingElement.monomial(group, acc)
        if trace is not None:
            trace.append((col, acc))
    return StateSumResult(value, len(colorings), trace)


def shadow_surface_state_sum(diagram, script_plus, script_minus, biq,
                             xset, theta, keep_trace=False):
    """Shadow surface state-sum: weights theta(y, x1, x2, x3) with y the
    transported color of each stage's source region."""
    _require_cocycle(theta, 3, True, "shadow_surface_state_sum")
    group = theta.group
    shadows = enumerate_shadow_colorings(diagram, biq, xset)
    base = [s.base for s in shadows]
    sides = [sides_from_shadow(diagram, s) for s in shadows]
    events = _script_events(diagram, script_plus, script_minus, base,
                            biq, xset=xset, sides=sides)
    value = GroupRingElement.zero(group)
    trace = [] if keep_trace else None
    for j, shadow in enumerate(shadows):
        acc = group.identity
        for sign in (1, -1):
            for ev in events[sign][j]:
                w = group.scale(theta(ev.y, ev.x1, ev.x2, ev.x3),
                                sign * ev.exponent)
                acc = group.add(acc, w)
        value += GroupRingElement.monomial(group, acc)
        if trace is not None:
            trace.append((shadow, acc))
    return StateSumResult(value, len(shadows), trace)


def cohomologous_check(c1, c2, fixtures, biq, xset=None):
    """Compare state-sums of two cohomologous weight tables.

    Fixtures are (name, diagram) entries for 2-cocycles or
    (name, diagram, script_plus, script_minus) for 3-cocycles.  Returns a
    report dict; equality on every fixture is the caller's assertion.
    """
    witness = cohomologous(c1, c2)
    if witness is None:
        raise StateSumError("tables are not cohomologous")

    def evaluate(table, fixture):
        if c1.arity == 2 and not c1.shadow:
            name, diagram = fixture
            return link_state_sum(diagram, biq, table)
        if c1.arity == 3 and not c1.shadow:
            name, diagram, sp, sm = fixture
            return surface_state_sum(diagram, sp, sm, biq, table)
        if c1.arity == 3 and c1.shadow:
            name, diagram, sp, sm = fixture
            return shadow_surface_state_sum(diagram, sp, sm, biq, xset,
                                            table)
        raise StateSumError("unsupported table shape for fixtures")

    comparisons = []
    for fixture in fixtures:
        left = evaluate(c1, fixture)
        right = evaluate(c2, fixture)
        comparisons.append({
            "fixture": fixture[0],
            "left": str(left.value),
            "right": str(right.value),
            "equal": left.value == right.value,
        })
    return {"ok": all(c["equal"] for c in comparisons),
            "witness": witness.to_json(),
            "comparisons": comparisons}
