"""Cochains on a finite biquandle, cocycle checks, and cocycle enumeration.

A cochain is stored as a total table: a map from keys to elements of a
finite abelian coefficient group, with omitted keys equal to the identity.
Keys are arity-tuples of biquandle elements; shadow cochains prepend an
element of the acted-on set.  The cocycle conditions are implemented as the
explicit closed-form identities for arities 2 and 3 (and shadow arity 3),
each reported with the full list of violating tuples, so a failed check
names concrete witnesses instead of a bare boolean.

Enumeration works over a single cyclic coefficient group Z_m.  Cocycles are
the mod-m kernel of the transposed boundary of the non-degenerate complex,
coboundaries the mod-m image of the previous transposed boundary; both come
back as lists of tables.  `cohomologous` searches for an explicit cochain
whose coboundary is the difference of two cocycles.
"""

from __future__ import annotations

import itertools
import re

from .complexes import ChainComplexSpec, is_degenerate
from .groups import FinAbGroup
from .snf import SmithForm, mat_vec, transpose
from .tables import XSetAction

ENTRY_LIMIT = 10 ** 6

CHI_RE = re.compile(r"chi\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


class CocycleTable:
    """A total cochain table with values in a finite abelian group.

    `arity` counts biquandle entries only; a shadow table's keys carry one
    extra leading entry from the acted-on set.
    """

    def __init__(self, biquandle, arity, group, values=None, xset=None):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        if xset is not None and not isinstance(xset, XSetAction):
            raise ValueError("xset must be an XSetAction")
        self.biquandle = biquandle
        self.arity = arity
        self.group = group
        self.xset = xset
        self.shadow = xset is not None
        self.table = {}
        for key, value in (values or {}).items():
            key = self._check_key(tuple(key))
            value = group.reduce(tuple(value))
            if value != group.identity:
                self.table[key] = value

    def _check_key(self, key):
        want = self.arity + (1 if self.shadow else 0)
        if len(key) != want:
            raise ValueError(f"key {key} has length {len(key)}, want {want}")
        xs = key[1:] if self.shadow else key
        if self.shadow and not 0 <= key[0] < self.xset.m:
            raise ValueError(f"shadow entry out of range in {key}")
        if any(not 0 <= x < self.biquandle.n for x in xs):
            raise ValueError(f"biquandle entry out of range in {key}")
        return key

    def __call__(self, *key):
        return self.table.get(self._check_key(key), self.group.identity)

    def keys(self):
        """All keys in lexicographic order, shadow entry most significant."""
        nx = self.biquandle.n
        if self.shadow:
            for y in range(self.xset.m):
                for xs in itertools.product(range(nx), repeat=self.arity):
                    yield (y,) + xs
        else:
            yield from itertools.product(range(nx), repeat=self.arity)

    def support(self):
        return sorted(self.table)

    def is_zero(self):
        return not self.table

    def _same_shape(self, other):
        if (self.biquandle is not other.biquandle
                and self.biquandle.to_json() != other.biquandle.to_json()):
            raise ValueError("tables over different biquandles")
        if self.arity != other.arity or self.shadow != other.shadow:
            raise ValueError("tables of different shape")
        if self.group != other.group:
            raise ValueError("tables over different groups")

    def add(self, other):
        self._same_shape(other)
        values = dict(self.table)
        for key, val in other.table.items():
            values[key] = self.group.add(values.get(key, self.group.identity),
                                         val)
        return CocycleTable(self.biquandle, self.arity, self.group, values,
                            self.xset)

    def neg(self):
        values = {k: self.group.neg(v) for k, v in self.table.items()}
        return CocycleTable(self.biquandle, self.arity, self.group, values,
                            self.xset)

    def sub(self, other):
        return self.add(other.neg())

    def with_entry(self, key, value):
        """Copy with one entry replaced; handy for building counterexamples."""
        values = dict(self.table)
        values[tuple(key)] = tuple(value)
        return CocycleTable(self.biquandle, self.arity, self.group, values,
                            self.xset)

    def to_json(self):
        return {
            "arity": self.arity,
            "shadow": self.shadow,
            "group": self.group.to_json(),
            "entries": [{"key": list(k), "value": list(v)}
                        for k, v in sorted(self.table.items())],
        }

    @classmethod
    def from_json(cls, biquandle, data, xset=None):
        group = FinAbGroup.from_json(data["group"])
        if data.get("shadow") and xset is None:
            raise ValueError("shadow cochain needs an xset")
        if not data.get("shadow"):
            xset = None
        values = {tuple(e["key"]): tuple(e["value"])
                  for e in data.get("entries", [])}
        return cls(biquandle, data["arity"], group, values, xset)

    @classmethod
    def from_chi(cls, biquandle, group, text, xset=None):
        """Parse a product of characteristic functions like
        "chi(1,4,1)*chi(1,4,3)", written with 1-based entries, each factor
        contributing one copy of the group generator at its key."""
        if len(group.moduli) != 1:
            raise ValueError("chi notation needs a cyclic group")
        matches = CHI_RE.findall(text)
        if not matches or CHI_RE.sub("", text).strip(" *\t\n"):
            raise ValueError(f"cannot parse chi expression: {text!r}")
        gen = group.generator(0)
        values = {}
        arity = None
        for body in matches:
            raw = tuple(int(p) - 1 for p in body.split(","))
            width = len(raw) - (1 if xset is not None else 0)
            if arity is None:
                arity = width
            elif arity != width:
                raise ValueError("chi factors of mixed arity")
            values[raw] = group.add(values.get(raw, group.identity), gen)
        return cls(biquandle, arity, group, values, xset)


def _zero(group):
    return group.identity


def check_cocycle(cochain):
    """Violations of the cocycle conditions, as (condition, tuple) pairs.

    Condition "i" is vanishing on keys with a repeated adjacent biquandle
    entry; condition "ii" is the arity-specific exchange identity, reported
    with the quantified tuple that breaks it.  Supported shapes: arity 2 and
    3 plain, arity 3 shadow.
    """
    bq = cochain.biquandle
    g = cochain.group
    n = bq.n
    u = bq.under
    o = bq.over
    witnesses = []

    for key in cochain.keys():
        xs = key[1:] if cochain.shadow else key
        if is_degenerate(xs) and cochain(*key) != g.identity:
            witnesses.append(("i", key))

    def total(*terms):
        acc = g.identity
        for t in terms:
            acc = g.add(acc, t)
        return acc

    rng = range(n)
    if not cochain.shadow and cochain.arity == 2:
        f = cochain
        for a in rng:
            for b in rng:
                for c in rng:
                    lhs = total(f(b, c), f(a, b), f(u(a, b), o(c, b)))
                    rhs = total(f(a, c), f(o(b, a), o(c, a)),
                                f(u(a, c), u(b, c)))
                    if lhs != rhs:
                        witnesses.append(("ii", (a, b, c)))
    elif not cochain.shadow and cochain.arity == 3:
        f = cochain
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        lhs = total(f(b, c, d), f(a, b, d),
                                    f(u(a, b), o(c, b), o(d, b)),
                                    f(u(a, d), u(b, d), u(c, d)))
                        rhs = total(f(a, c, d), f(a, b, c),
                                    f(o(b, a), o(c, a), o(d, a)),
                                    f(u(a, c), u(b, c), o(d, c)))
                        if lhs != rhs:
                            witnesses.append(("ii", (a, b, c, d)))
    elif cochain.shadow and cochain.arity == 3:
        f = cochain
        act = cochain.xset.apply
        for y in range(cochain.xset.m):
            for a in rng:
                for b in rng:
                    for c in rng:
                        for d in rng:
                            lhs = total(
                                f(y, b, c, d), f(y, a, b, d),
                                f(act(b, y), u(a, b), o(c, b), o(d, b)),
                                f(act(d, y), u(a, d), u(b, d), u(c, d)))
                            rhs = total(
                                f(y, a, c, d), f(y, a, b, c),
                                f(act(a, y), o(b, a), o(c, a), o(d, a)),
                                f(act(c, y), u(a, c), u(b, c), o(d, c)))
                            if lhs != rhs:
                                witnesses.append(("ii", (y, a, b, c, d)))
    else:
        kind = "shadow " if cochain.shadow else ""
        raise ValueError(
            f"no cocycle condition for {kind}arity {cochain.arity}")
    return witnesses


def coboundary(cochain):
    """The cochain w -> cochain(boundary w), one arity up."""
    spec = ChainComplexSpec(cochain.biquandle, "BR", cochain.xset,
                            max_degree=cochain.arity + 1)
    g = cochain.group
    out = CocycleTable(cochain.biquandle, cochain.arity + 1, g, None,
                       cochain.xset)
    values = {}
    for key in out.keys():
        acc = g.identity
        for coeff, term in spec.boundary_terms(key):
            acc = g.add(acc, g.scale(cochain(*term), coeff))
        if acc != g.identity:
            values[key] = acc
    return CocycleTable(cochain.biquandle, cochain.arity + 1, g, values,
                        cochain.xset)


def _require_cyclic(group):
    if len(group.moduli) != 1:
        raise ValueError("enumeration needs a cyclic coefficient group Z_m")
    return group.moduli[0]


def _guard_size(biquandle, arity, xset):
    entries = biquandle.n ** arity * (xset.m if xset is not None else 1)
    if entries > ENTRY_LIMIT:
        raise ValueError(
            f"cochain table with {entries} entries exceeds the "
            f"{ENTRY_LIMIT} entry limit")


def _table_from_vector(biquandle, arity, group, basis, vec, xset):
    m = group.moduli[0]
    values = {key: (v % m,) for key, v in zip(basis, vec) if v % m}
    return CocycleTable(biquandle, arity, group, values, xset)


def enumerate_cocycles(biquandle, arity, group, xset=None):
    """(cocycles, coboundaries) over Z_m, each a list of CocycleTables.

    Cocycles span the kernel of the transposed non-degenerate boundary mod
    m; coboundaries span its image from one arity down.  Both lists contain
    only non-zero tables supported on non-degenerate keys.
    """
    m = _require_cyclic(group)
    _guard_size(biquandle, arity, xset)
    spec = ChainComplexSpec(biquandle, "BQ", xset, max_degree=arity + 1)
    basis = spec.basis(arity)
    up = transpose(spec.boundary_matrix(arity + 1))
    if not up:
        up = [[0] * len(basis)]
    cocycles = [
        _table_from_vector(biquandle, arity, group, basis, vec, xset)
        for vec in SmithForm(up).kernel_mod(m)]

    down_t = transpose(spec.boundary_matrix(arity))
    coboundaries = []
    if down_t and down_t[0]:
        s = SmithForm(down_t)
        for i in range(s.rank):
            col = [s.v[r][i] for r in range(s.cols)]
            vec = [x % m for x in mat_vec(down_t, col)]
            if any(vec):
                coboundaries.append(_table_from_vector(
                    biquandle, arity, group, basis, vec, xset))
    return cocycles, coboundaries


def cohomologous(c1, c2):
    """A cochain whose coboundary is c1 - c2, or None if none exists.

    Both tables must share shape and a cyclic coefficient group, and the
    difference must vanish on degenerate keys, since coboundaries of
    non-degenerate cochains always do.
    """
    c1._same_shape(c2)
    if c1.arity < 2:
        raise ValueError("cohomologous needs arity at least 2")
    m = _require_cyclic(c1.group)
    _guard_size(c1.biquandle, c1.arity, c1.xset)
    diff = c1.sub(c2)
    spec = ChainComplexSpec(c1.biquandle, "BQ", c1.xset,
                            max_degree=c1.arity)
    basis = spec.basis(c1.arity)
    index = set(basis)
    for key in diff.table:
        if key not in index:
            return None
    vec = [diff(*key)[0] % m for key in basis]
    down_t = transpose(spec.boundary_matrix(c1.arity))
    if not down_t or not down_t[0]:
        if any(vec):
            return None
        return CocycleTable(c1.biquandle, c1.arity - 1, c1.group, None,
                            c1.xset)
    sol = SmithForm(down_t).solve_mod(vec, m)
    if sol is None:
        return None
    down_basis = spec.basis(c1.arity - 1)
    return _table_from_vector(c1.biquandle, c1.arity - 1, c1.group,
                              down_basis, sol, c1.xset)
