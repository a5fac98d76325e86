"""Finite abelian coefficient groups and their integral group rings.

A coefficient group is a product Z_{m1} x ... x Z_{mr}, written additively;
elements are tuples reduced componentwise.  State sums take values in the
group ring Z[A], written multiplicatively: over A = Z_2 = <t> the value
``4 + 12t`` records four colorings contributing the identity and twelve
contributing t.
"""

from __future__ import annotations

import itertools
import re


class FinAbGroup:
    """Z_{m1} x ... x Z_{mr} with elements stored as int tuples."""

    def __init__(self, moduli):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ValueError("moduli must be >= 2")
        self.moduli = moduli
        self.rank = len(moduli)

    @property
    def identity(self):
        return (0,) * self.rank

    def order(self):
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def reduce(self, elem):
        if len(elem) != self.rank:
            raise ValueError("element length does not match moduli")
        return tuple(int(x) % m for x, m in zip(elem, self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, a, k):
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def generator(self, i=0):
        g = [0] * self.rank
        g[i] = 1
        return tuple(g)

    # --- names and serialization -------------------------------------

    _NAME = re.compile(r"^Z(\d+)(?:x(Z\d+))*$", re.IGNORECASE)

    @classmethod
    def from_name(cls, name):
        """Parse names like "Z2", "Z3", "Z2xZ4"."""
        parts = name.strip().split("x")
        moduli = []
        for p in parts:
            p = p.strip()
            if not p or p[0] not in "zZ" or not p[1:].isdigit():
                raise ValueError(f"cannot parse group name {name!r}")
            moduli.append(int(p[1:]))
        return cls(moduli)

    def to_json(self):
        return {"moduli": list(self.moduli)}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "moduli" not in data:
            raise ValueError("group JSON needs a 'moduli' list")
        return cls(data["moduli"])

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return "FinAbGroup(%r)" % (list(self.moduli),)


def _monomial_str(elem, rank):
    if not any(elem):
        return "1"
    parts = []
    for i, k in enumerate(elem):
        if k == 0:
            continue
        letter = "t" if rank == 1 else f"t{i + 1}"
        parts.append(letter if k == 1 else f"{letter}^{k}")
    return "*".join(parts)


class GroupRingElement:
    """An element of Z[A] for a finite abelian A, kept as a sparse dict."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {}
        if terms:
            for elem, coeff in terms.items():
                self._bump(group.reduce(elem), int(coeff))

    def _bump(self, elem, coeff):
        if not coeff:
            return
        c = self.terms.get(elem, 0) + coeff
        if c:
            self.terms[elem] = c
        else:
            self.terms.pop(elem, None)

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def monomial(cls, group, elem, coeff=1):
        return cls(group, {group.reduce(elem): coeff})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = GroupRingElement(self.group, self.terms)
        for elem, coeff in other.terms.items():
            out._bump(elem, coeff)
        return out

    def __sub__(self, other):
        self._check(other)
        out = GroupRingElement(self.group, self.terms)
        for elem, coeff in other.terms.items():
            out._bump(elem, -coeff)
        return out

    def __neg__(self):
        return GroupRingElement(self.group, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(
                self.group, {e: other * c for e, c in self.terms.items()})
        self._check(other)
        out = GroupRingElement(self.group)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out._bump(self.group.add(e1, e2), c1 * c2)
        return out

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, GroupRingElement) or other.group != self.group:
            raise ValueError("group ring mismatch")

    def __eq__(self, other):
        return (isinstance(other, GroupRingElement)
                and self.group == other.group and self.terms == other.terms)

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.terms.items()))))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def augmentation(self):
        """Sum of coefficients: the image under A -> 1."""
        return sum(self.terms.values())

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for elem, coeff in self.sorted_terms():
            mono = _monomial_str(elem, self.group.rank)
            if mono == "1":
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            if not out:
                out.append(body if coeff > 0 else f"-{body}")
            else:
                out.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"<GroupRingElement {self}>"

    def to_json(self):
        return {"terms": [{"elem": list(e), "coeff": c}
                          for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, group, data):
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError("group ring JSON needs a 'terms' list")
        out = cls(group)
        for t in data["terms"]:
            out._bump(group.reduce(tuple(t["elem"])), int(t["coeff"]))
        return out
