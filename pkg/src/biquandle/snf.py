"""Smith normal form and exact integer linear algebra.

Everything here works on plain lists of Python ints, so intermediate entries
may grow without overflow.  The central object is :class:`SmithForm`, which
records a decomposition U * M * V = D with U, V unimodular and D diagonal
with a divisibility chain d1 | d2 | ... .  From it we read off ranks, integer
kernels, integer solutions of M x = b, and their mod-m analogues, which is
all the homology and cocycle machinery needs.
"""

from __future__ import annotations

from math import gcd


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError("shape mismatch")
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    oi[j] += x * bk[j]
    return out


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


class SmithForm:
    """Decomposition U*M*V = D of an integer matrix M."""

    def __init__(self, matrix):
        self.rows = len(matrix)
        self.cols = len(matrix[0]) if self.rows else 0
        a = [[int(x) for x in row] for row in matrix]
        for row in a:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
        u = identity_matrix(self.rows)
        v = identity_matrix(self.cols)
        self._reduce(a, u, v)
        self.d = a
        self.u = u
        self.v = v
        self.rank = sum(1 for i in range(min(self.rows, self.cols)) if a[i][i])
        self.diagonal = [a[i][i] for i in range(min(self.rows, self.cols))]

    # --- construction -------------------------------------------------

    @staticmethod
    def _reduce(a, u, v):
        rows = len(a)
        cols = len(a[0]) if rows else 0

        def swap_rows(i, j):
            if i != j:
                a[i], a[j] = a[j], a[i]
                u[i], u[j] = u[j], u[i]

        def swap_cols(i, j):
            if i != j:
                for row in a:
                    row[i], row[j] = row[j], row[i]
                for row in v:
                    row[i], row[j] = row[j], row[i]

        def add_row(dst, src, mult):
            # row_dst += mult * row_src
            a[dst] = [x + mult * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + mult * y for x, y in zip(u[dst], u[src])]

        def add_col(dst, src, mult):
            for row in a:
                row[dst] += mult * row[src]
            for row in v:
                row[dst] += mult * row[src]

        t = 0
        while t < min(rows, cols):
            # locate a pivot of minimal absolute value in the trailing block
            piv = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(a[i][j])
                    if x and (best is None or x < best):
                        best = x
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])

            while True:
                # clear the pivot column and row; euclidean remainders become
                # the new smaller pivot and restart the sweep
                restart = False
                for i in range(t + 1, rows):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        add_row(i, t, -q)
                        if a[i][t]:
                            swap_rows(t, i)
                            restart = True
                            break
                if restart:
                    continue
                for j in range(t + 1, cols):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        add_col(j, t, -q)
                        if a[t][j]:
                            swap_cols(t, j)
                            restart = True
                            break
                if restart:
                    continue
                break

            # enforce the divisibility chain: the pivot must divide every
            # entry of the remaining block
            d = a[t][t]
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is not None:
                add_row(t, offender, 1)
                continue
            if d < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            t += 1

    # --- queries ------------------------------------------------------

    def kernel_basis(self):
        """Basis of the integer kernel of M, as a list of column vectors."""
        return [[self.v[i][j] for i in range(self.cols)]
                for j in range(self.rank, self.cols)]

    def solve(self, b):
        """An integer solution x of M x = b, or None."""
        if len(b) != self.rows:
            raise ValueError("bad rhs length")
        ub = mat_vec(self.u, b)
        z = [0] * self.cols
        for i in range(self.rows):
            di = self.d[i][i] if i < min(self.rows, self.cols) else 0
            if i < self.rank:
                if ub[i] % di:
                    return None
                z[i] = ub[i] // di
            elif ub[i]:
                return None
        return mat_vec(self.v, z)

    def kernel_mod(self, m):
        """Generators of {x in (Z_m)^cols : M x = 0 mod m}.

        Returned vectors are reduced mod m and generate the solution module;
        for prime m they form an F_p basis.
        """
        if m < 2:
            raise ValueError("modulus must be >= 2")
        gens = []
        for i in range(self.rank):
            s = m // gcd(self.d[i][i], m)
            if s == m:
                continue  # only the zero multiple survives
            col = [(s * self.v[r][i]) % m for r in range(self.cols)]
            if any(col):
                gens.append(col)
        for j in range(self.rank, self.cols):
            col = [self.v[r][j] % m for r in range(self.cols)]
            if any(col):
                gens.append(col)
        return gens

    def solve_mod(self, b, m):
        """A solution x of M x = b mod m, or None."""
        if m < 2:
            raise ValueError("modulus must be >= 2")
        ub = mat_vec(self.u, b)
        z = [0] * self.cols
        for i in range(self.rows):
            di = self.d[i][i] if i < min(self.rows, self.cols) else 0
            r = ub[i] % m
            if i < self.rank:
                g = gcd(di, m)
                if r % g:
                    return None
                # solve di * z = r mod m:  (di/g) z = r/g mod m/g
                mm = m // g
                inv = pow((di // g) % mm, -1, mm) if mm > 1 else 0
                z[i] = ((r // g) * inv) % m if mm > 1 else 0
            elif r:
                return None
        return [x % m for x in mat_vec(self.v, z)]


def smith_normal_form(matrix):
    """Return (D, U, V) with U * matrix * V = D in Smith normal form."""
    s = SmithForm(matrix)
    return s.d, s.u, s.v
