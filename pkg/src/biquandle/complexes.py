"""Chain complexes attached to a finite biquandle and their homology.

Three flavors share one boundary formula.  C_n is free on n-tuples of
biquandle elements ("BR"); the tuples with a repeated adjacent entry span a
subcomplex ("BD"); the quotient ("BQ") is the one whose cocycles feed the
state sums.  The shadow version prepends an element of an acted-on set Y to
every tuple and acts on it in the twisted term of the boundary.

The boundary of an n-tuple is the alternating sum over positions i of the
tuple with entry i dropped, minus the tuple where entries before i pass
under x_i and entries after i pass over x_i (the shadow entry passes under).
Degrees n <= 1 have zero boundary; non-shadow chain groups vanish for
n <= 0 while the shadow C_0 is free on Y.

Homology is computed from integer Smith normal forms.  With Z_m
coefficients the cycle lattice {x : Ax = 0 mod m} is written in a basis,
the images of the next boundary together with m times the identity are
expressed in that basis, and the Smith form of the result reads off the
invariant factors; no floating point is involved anywhere.
"""

from __future__ import annotations

import itertools
from math import gcd

from .groups import FinAbGroup
from .snf import SmithForm, identity_matrix
from .tables import XSetAction

FLAVORS = ("BR", "BD", "BQ")


def is_degenerate(xs):
    return any(xs[i] == xs[i + 1] for i in range(len(xs) - 1))


class DegreeError(ValueError):
    pass


class ChainComplexSpec:
    """One flavor of the complex of a biquandle, optionally with a shadow."""

    def __init__(self, biquandle, flavor="BQ", xset=None, max_degree=5):
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        if xset is not None and not isinstance(xset, XSetAction):
            raise ValueError("xset must be an XSetAction")
        self.biquandle = biquandle
        self.flavor = flavor
        self.xset = xset
        self.shadow = xset is not None
        self.max_degree = max_degree
        self._basis_cache = {}
        self._index_cache = {}
        self._matrix_cache = {}

    def _check_degree(self, n):
        # one past max_degree stays legal so homology(max_degree) can see
        # the incoming boundary
        if n > self.max_degree + 1:
            raise DegreeError(
                f"degree {n} beyond max_degree {self.max_degree}")

    def _keep(self, xs, n):
        if self.flavor == "BR":
            return True
        deg = is_degenerate(xs) if n >= 2 else False
        return deg if self.flavor == "BD" else not deg

    def basis(self, n):
        """Generating tuples in lexicographic order; shadow tuples start
        with the Y entry."""
        self._check_degree(n)
        if n in self._basis_cache:
            return self._basis_cache[n]
        nx = self.biquandle.n
        if self.shadow:
            if n < 0:
                out = []
            else:
                out = []
                for y in range(self.xset.m):
                    for xs in itertools.product(range(nx), repeat=n):
                        if self._keep(xs, n):
                            out.append((y,) + xs)
        else:
            if n <= 0:
                out = []
            else:
                out = [xs for xs in itertools.product(range(nx), repeat=n)
                       if self._keep(xs, n)]
        self._basis_cache[n] = out
        self._index_cache[n] = {t: i for i, t in enumerate(out)}
        return out

    def boundary_terms(self, tup):
        """The boundary of one generator as (coefficient, tuple) pairs,
        before any flavor projection."""
        u = self.biquandle.under_table
        o = self.biquandle.over_table
        if self.shadow:
            y, xs = tup[0], tup[1:]
        else:
            y, xs = None, tup
        n = len(xs)
        if n <= 1:
            return []
        out = []
        for i in range(1, n + 1):
            xi = xs[i - 1]
            sign = -1 if i % 2 else 1
            dropped = xs[:i - 1] + xs[i:]
            twisted = tuple(u[x][xi] for x in xs[:i - 1]) + \
                tuple(o[x][xi] for x in xs[i:])
            if self.shadow:
                dropped = (y,) + dropped
                twisted = (self.xset.apply(xi, y),) + twisted
            out.append((sign, dropped))
            out.append((-sign, twisted))
        return out

    def boundary_matrix(self, n):
        """Matrix of the boundary C_n -> C_{n-1} in the basis() orderings.

        For BQ the image is projected to the non-degenerate basis; for BD
        every image term must itself be degenerate, which the biquandle
        axioms guarantee and this method asserts.
        """
        self._check_degree(n)
        if n in self._matrix_cache:
            return self._matrix_cache[n]
        rows = self.basis(n - 1) if n - 1 >= 0 else []
        cols = self.basis(n)
        index = self._index_cache.get(n - 1, {})
        mat = [[0] * len(cols) for _ in rows]
        for j, tup in enumerate(cols):
            totals = {}
            for coeff, term in self.boundary_terms(tup):
                totals[term] = totals.get(term, 0) + coeff
            for term, coeff in totals.items():
                if not coeff:
                    continue
                i = index.get(term)
                if i is None:
                    xs = term[1:] if self.shadow else term
                    if self.flavor == "BQ":
                        assert is_degenerate(xs)
                        continue
                    # BD closure rests on the diagonal axiom; a surviving
                    # stray term means the tables are not a biquandle
                    raise AssertionError(
                        f"boundary term {term} left the {self.flavor} complex")
                mat[i][j] = coeff
        self._matrix_cache[n] = mat
        return mat

    def dim(self, n):
        return len(self.basis(n))

    # --- homology -----------------------------------------------------

    def homology(self, n, coefficients="Z"):
        """(free_rank, invariant_factors) of H_n with the given coefficients.

        Coefficients may be the string "Z", an int modulus, or a FinAbGroup;
        a product group is handled factor by factor and the torsion list is
        renormalized into a divisibility chain.
        """
        if n > self.max_degree:
            raise DegreeError(
                f"degree {n} beyond max_degree {self.max_degree}")
        if isinstance(coefficients, str):
            if coefficients != "Z":
                raise ValueError("string coefficients must be 'Z'")
            return self._homology_z(n)
        if isinstance(coefficients, int):
            return self._merge([self._homology_mod(n, coefficients)])
        if isinstance(coefficients, FinAbGroup):
            return self._merge([self._homology_mod(n, m)
                                for m in coefficients.moduli])
        raise ValueError("unsupported coefficient description")

    @staticmethod
    def _merge(parts):
        factors = [d for _, fs in parts for d in fs]
        free = sum(r for r, _ in parts)
        if len(parts) > 1 and factors:
            diag = [[factors[i] if i == j else 0 for j in range(len(factors))]
                    for i in range(len(factors))]
            s = SmithForm(diag)
            factors = [d for d in s.diagonal if d > 1]
        return free, factors

    def _kernel_basis_z(self, n):
        k = self.dim(n)
        a = self.boundary_matrix(n)
        if not a:
            return identity_matrix(k)
        kb = SmithForm(a).kernel_basis()
        # columns of length k
        return [[kb[j][i] for j in range(len(kb))] for i in range(k)] if kb \
            else [[] for _ in range(k)]

    def _homology_z(self, n):
        k = self.dim(n)
        if k == 0:
            return 0, []
        kern = self._kernel_basis_z(n)  # k x dk
        dk = len(kern[0])
        if dk == 0:
            return 0, []
        b = self.boundary_matrix(n + 1)
        l = self.dim(n + 1)
        if l == 0:
            return dk, []
        sk = SmithForm(kern)
        ymat = [[0] * l for _ in range(dk)]
        for j in range(l):
            col = [b[i][j] for i in range(k)]
            y = sk.solve(col)
            assert y is not None, "boundary image escaped the cycle lattice"
            for i in range(dk):
                ymat[i][j] = y[i]
        sy = SmithForm(ymat)
        factors = [d for d in sy.diagonal if d > 1]
        return dk - sy.rank, factors

    def _homology_mod(self, n, m):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        k = self.dim(n)
        if k == 0:
            return 0, []
        a = self.boundary_matrix(n)
        if not a:
            lattice = identity_matrix(k)
        else:
            sa = SmithForm(a)
            lattice = [[0] * k for _ in range(k)]
            for j in range(k):
                if j < sa.rank:
                    s = m // gcd(sa.d[j][j], m)
                else:
                    s = 1
                for i in range(k):
                    lattice[i][j] = s * sa.v[i][j]
        sn = SmithForm(lattice)
        b = self.boundary_matrix(n + 1)
        l = self.dim(n + 1)
        rels = []
        for j in range(l):
            col = [b[i][j] for i in range(k)]
            y = sn.solve(col)
            assert y is not None, "boundary image escaped the cycle lattice"
            rels.append(y)
        for i in range(k):
            col = [m if r == i else 0 for r in range(k)]
            y = sn.solve(col)
            assert y is not None
            rels.append(y)
        ymat = [[rels[j][i] for j in range(len(rels))] for i in range(k)]
        sy = SmithForm(ymat)
        assert sy.rank == k, "modulus relations must have full rank"
        factors = [d for d in sy.diagonal if d > 1]
        return 0, factors


def dd_is_zero(spec, n):
    """Whether boundary(n-1) . boundary(n) vanishes, via integer numpy."""
    import numpy as np
    a = spec.boundary_matrix(n - 1)
    b = spec.boundary_matrix(n)
    if not a or not b or not b[0]:
        return True
    prod = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
    return not prod.any()
