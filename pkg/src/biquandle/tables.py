"""Finite biquandles presented by operation tables.

A biquandle structure on X = {0, ..., n-1} is a pair of binary operations,
written here ``under(x, y)`` and ``over(x, y)``, subject to four axioms:

  B1  under(x, x) == over(x, x)
  B2  for each y, both x -> under(x, y) and x -> over(x, y) are bijections
  B3  (x, y) -> (over(y, x), under(x, y)) is a bijection of X x X
  B4  three exchange identities, one per mixture of the two operations:
        under(under(x,y), under(z,y)) == under(under(x,z), over(y,z))
        over(under(x,y), under(z,y)) == under(over(x,z), over(y,z))
        over(over(x,y), over(z,y))   == over(over(x,z), under(y,z))

The names record the diagrammatic role: when a strand colored x passes under
a strand colored y, it emerges colored under(x, y); passing over, over(x, y).
A quandle is the special case where over(x, y) == x for all y.
"""

from __future__ import annotations

import itertools


def _check_table(table, n, name):
    if len(table) != n:
        raise ValueError(f"{name} table must have {n} rows")
    out = []
    for row in table:
        row = tuple(int(v) for v in row)
        if len(row) != n or any(v < 0 or v >= n for v in row):
            raise ValueError(f"{name} table entries must lie in 0..{n - 1}")
        out.append(row)
    return tuple(out)


class Biquandle:
    """Two n-by-n tables; ``verify`` reports axiom violations with witnesses."""

    def __init__(self, under, over):
        n = len(under)
        self.n = n
        self.under_table = _check_table(under, n, "under")
        self.over_table = _check_table(over, n, "over")
        self._under_inv = None
        self._over_inv = None
        self._h_inv = None
        self._kink_inv = None

    def under(self, x, y):
        return self.under_table[x][y]

    def over(self, x, y):
        return self.over_table[x][y]

    # --- axioms -------------------------------------------------------

    def verify(self):
        """List of violation witnesses, empty iff this is a biquandle.

        Each witness is a pair (tag, args): ("B1", (x,)), ("B2", (op, y)),
        ("B3", ((x1, y1), (x2, y2))) for a collision, ("B4.k", (x, y, z)).
        """
        n = self.n
        u, o = self.under_table, self.over_table
        bad = []
        for x in range(n):
            if u[x][x] != o[x][x]:
                bad.append(("B1", (x,)))
        for y in range(n):
            if len({u[x][y] for x in range(n)}) != n:
                bad.append(("B2", ("under", y)))
            if len({o[x][y] for x in range(n)}) != n:
                bad.append(("B2", ("over", y)))
        seen = {}
        for x in range(n):
            for y in range(n):
                img = (o[y][x], u[x][y])
                if img in seen:
                    bad.append(("B3", (seen[img], (x, y))))
                else:
                    seen[img] = (x, y)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if u[u[x][y]][u[z][y]] != u[u[x][z]][o[y][z]]:
                        bad.append(("B4.1", (x, y, z)))
                    if o[u[x][y]][u[z][y]] != u[o[x][z]][o[y][z]]:
                        bad.append(("B4.2", (x, y, z)))
                    if o[o[x][y]][o[z][y]] != o[o[x][z]][u[y][z]]:
                        bad.append(("B4.3", (x, y, z)))
        return bad

    def is_valid(self):
        return not self.verify()

    def require_valid(self):
        bad = self.verify()
        if bad:
            raise ValueError(f"not a biquandle, first violation {bad[0]}")
        return self

    def is_quandle(self):
        """True when the over operation is trivial (classical quandle case)."""
        return all(self.over_table[x][y] == x
                   for x in range(self.n) for y in range(self.n))

    # --- inverses used by coloring propagation ------------------------

    def _build_inverses(self):
        n = self.n
        ui = [[None] * n for _ in range(n)]
        oi = [[None] * n for _ in range(n)]
        for y in range(n):
            for x in range(n):
                ui[self.under_table[x][y]][y] = x
                oi[self.over_table[x][y]][y] = x
        if any(v is None for row in ui for v in row) or \
           any(v is None for row in oi for v in row):
            raise ValueError("operations are not invertible (B2 fails)")
        self._under_inv = tuple(tuple(r) for r in ui)
        self._over_inv = tuple(tuple(r) for r in oi)

    def under_inv(self, z, y):
        """The x with under(x, y) == z."""
        if self._under_inv is None:
            self._build_inverses()
        return self._under_inv[z][y]

    def over_inv(self, z, y):
        """The x with over(x, y) == z."""
        if self._over_inv is None:
            self._build_inverses()
        return self._over_inv[z][y]

    def pair_map(self, a, b):
        """(under(a, b), over(b, a)): colors leaving a positive crossing."""
        return (self.under_table[a][b], self.over_table[b][a])

    def pair_map_inv(self, u, v):
        """Inverse of pair_map; total because of B3."""
        if self._h_inv is None:
            inv = {}
            for x in range(self.n):
                for y in range(self.n):
                    inv[self.pair_map(x, y)] = (x, y)
            self._h_inv = inv
        return self._h_inv[(u, v)]

    def kink_inv(self, z):
        """The x with under(x, x) == z; used to color away a kink."""
        if self._kink_inv is None:
            inv = {}
            for x in range(self.n):
                inv[self.under_table[x][x]] = x
            if len(inv) != self.n:
                raise ValueError("x -> under(x, x) is not a bijection")
            self._kink_inv = inv
        return self._kink_inv[z]

    # --- maps between biquandles --------------------------------------

    def canonical_form(self):
        """Minimal relabeling of the table pair; equal iff isomorphic.

        Scans all n! relabelings, so only sensible for small orders.
        """
        n = self.n
        best = None
        for perm in itertools.permutations(range(n)):
            inv = [0] * n
            for i, p in enumerate(perm):
                inv[p] = i
            flat = []
            for x in range(n):
                for y in range(n):
                    flat.append(perm[self.under_table[inv[x]][inv[y]]])
            for x in range(n):
                for y in range(n):
                    flat.append(perm[self.over_table[inv[x]][inv[y]]])
            key = tuple(flat)
            if best is None or key < best:
                best = key
        return best

    def relabel(self, perm):
        """Transport the structure along x -> perm[x]."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        u = [[perm[self.under_table[inv[x]][inv[y]]] for y in range(n)]
             for x in range(n)]
        o = [[perm[self.over_table[inv[x]][inv[y]]] for y in range(n)]
             for x in range(n)]
        return Biquandle(u, o)

    def __eq__(self, other):
        return (isinstance(other, Biquandle)
                and self.under_table == other.under_table
                and self.over_table == other.over_table)

    def __hash__(self):
        return hash((self.under_table, self.over_table))

    def __repr__(self):
        return f"<Biquandle of order {self.n}>"

    # --- serialization ------------------------------------------------

    def to_json(self):
        return {
            "n": self.n,
            "under": [list(r) for r in self.under_table],
            "over": [list(r) for r in self.over_table],
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("biquandle JSON must be an object")
        for key in ("n", "under", "over"):
            if key not in data:
                raise ValueError(f"biquandle JSON needs {key!r}")
        bq = cls(data["under"], data["over"])
        if bq.n != int(data["n"]):
            raise ValueError("declared order does not match table size")
        return bq


def trivial_biquandle(n):
    """Both operations the identity."""
    table = [[x] * n for x in range(n)]
    return Biquandle(table, table)


def alexander_biquandle(n, s, t):
    """under(x, y) = t*x + (s^-1 - t)*y,  over(x, y) = s^-1 * x, on Z_n.

    Requires s and t to be units mod n.
    """
    from math import gcd
    if gcd(s, n) != 1 or gcd(t, n) != 1:
        raise ValueError("s and t must be invertible mod n")
    si = pow(s, -1, n)
    under = [[(t * (x - y) + si * y) % n for y in range(n)] for x in range(n)]
    over = [[(si * x) % n for _ in range(n)] for x in range(n)]
    return Biquandle(under, over)


def dihedral_quandle(n):
    """x * y = 2y - x mod n, as a biquandle with trivial over operation."""
    under = [[(2 * y - x) % n for y in range(n)] for x in range(n)]
    over = [[x for _ in range(n)] for x in range(n)]
    return Biquandle(under, over)


def quandle_as_biquandle(table):
    """Embed a quandle table as a biquandle with trivial over operation.

    Validates the quandle axioms and raises with a witness on failure.
    """
    n = len(table)
    q = _check_table(table, n, "quandle")
    for x in range(n):
        if q[x][x] != x:
            raise ValueError(f"not a quandle: idempotence fails at {x}")
    for y in range(n):
        if len({q[x][y] for x in range(n)}) != n:
            raise ValueError(f"not a quandle: column {y} is not a bijection")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if q[q[x][y]][z] != q[q[x][z]][q[y][z]]:
                    raise ValueError(
                        f"not a quandle: distributivity fails at {(x, y, z)}")
    over = [[x for _ in range(n)] for x in range(n)]
    bq = Biquandle(q, over)
    bad = bq.verify()
    assert not bad, bad
    return bq


def enumerate_homs(src, dst):
    """All maps f: src -> dst respecting both operations, sorted."""
    n, m = src.n, dst.n
    su, so = src.under_table, src.over_table
    du, do = dst.under_table, dst.over_table
    out = []
    f = [None] * n

    def consistent(k):
        # check every pair whose images and whose results' images are known;
        # results involve indices su[x][y] which may exceed k, so defer those
        for x in range(k + 1):
            for y in range(k + 1):
                tu = su[x][y]
                if tu <= k and f[tu] != du[f[x]][f[y]]:
                    return False
                to = so[x][y]
                if to <= k and f[to] != do[f[x]][f[y]]:
                    return False
        return True

    def rec(k):
        if k == n:
            out.append(tuple(f))
            return
        for v in range(m):
            f[k] = v
            if consistent(k):
                rec(k + 1)
        f[k] = None

    rec(0)
    # deferred checks above make the final filter a no-op, kept as a guard
    good = []
    for g in out:
        if all(g[su[x][y]] == du[g[x]][g[y]] and g[so[x][y]] == do[g[x]][g[y]]
               for x in range(n) for y in range(n)):
            good.append(g)
    return sorted(good)


def are_isomorphic(a, b):
    """True when some bijective relabeling carries a onto b."""
    if a.n != b.n:
        return False
    for perm in itertools.permutations(range(a.n)):
        if a.relabel(perm) == b:
            return True
    return False


class XSetAction:
    """A right action of the biquandle on a set Y = {0, ..., m-1}.

    ``act[x]`` is the bijection y -> y . x, and the compatibility law
    act[over(y, x)] o act[x] == act[under(x, y)] o act[y] must hold; it is
    exactly what makes region colors well defined across a crossing.
    """

    def __init__(self, biquandle, act):
        self.biquandle = biquandle
        self.m = len(act[0]) if act else 0
        self.act = tuple(tuple(int(v) for v in row) for row in act)
        if len(self.act) != biquandle.n:
            raise ValueError("need one permutation per biquandle element")
        self._inv = None

    def apply(self, x, y):
        return self.act[x][y]

    def apply_inv(self, x, y):
        if self._inv is None:
            inv = []
            for row in self.act:
                r = [None] * self.m
                for i, v in enumerate(row):
                    r[v] = i
                inv.append(tuple(r))
            self._inv = tuple(inv)
        return self._inv[x][y]

    def verify(self):
        """Violation witnesses: ("bijective", (x,)) or ("action", (x, y))."""
        bad = []
        n, m = self.biquandle.n, self.m
        for x in range(n):
            if any(v < 0 or v >= m for v in self.act[x]) or \
               len(set(self.act[x])) != m:
                bad.append(("bijective", (x,)))
        if bad:
            return bad
        u, o = self.biquandle.under_table, self.biquandle.over_table
        for x in range(n):
            for y in range(n):
                lhs = self.act[o[y][x]]
                rhs = self.act[u[x][y]]
                for p in range(m):
                    if lhs[self.act[x][p]] != rhs[self.act[y][p]]:
                        bad.append(("action", (x, y)))
                        break
        return bad

    def is_valid(self):
        return not self.verify()

    def to_json(self):
        return {"m": self.m, "act": [list(r) for r in self.act]}

    @classmethod
    def from_json(cls, biquandle, data):
        if not isinstance(data, dict) or "act" not in data:
            raise ValueError("X-set JSON needs an 'act' table")
        xs = cls(biquandle, data["act"])
        if "m" in data and int(data["m"]) != xs.m:
            raise ValueError("declared size does not match act table")
        return xs


def under_action(biquandle):
    """The biquandle acting on itself by y -> under(y, x)."""
    n = biquandle.n
    act = [[biquandle.under_table[y][x] for y in range(n)] for x in range(n)]
    return XSetAction(biquandle, act)


def singleton_xset(biquandle):
    """The one point set with the only possible action."""
    return XSetAction(biquandle, [[0]] * biquandle.n)
