"""Smith form: hand-checked small cases plus randomized structure checks."""

import random

from biquandle.snf import SmithForm, identity_matrix, mat_mul, smith_normal_form


def is_identity(m):
    n = len(m)
    return all(m[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def det_is_unit(m):
    # expand by hand for the small unimodular factors in these tests
    n = len(m)
    if n == 0:
        return True
    total = 0
    import itertools
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total in (1, -1)


def check_decomposition(mat):
    s = SmithForm(mat)
    assert mat_mul(mat_mul(s.u, mat), s.v) == s.d
    k = min(s.rows, s.cols)
    for i in range(s.rows):
        for j in range(s.cols):
            if i != j:
                assert s.d[i][j] == 0
    diag = [s.d[i][i] for i in range(k)]
    for i in range(k - 1):
        if diag[i + 1]:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
    assert all(x >= 0 for x in diag)
    return s


def test_worked_example():
    # row reduce [[2,4],[6,8]] by hand: invariant factors 2 and 4
    d, u, v = smith_normal_form([[2, 4], [6, 8]])
    assert d == [[2, 0], [0, 4]]
    assert mat_mul(mat_mul(u, [[2, 4], [6, 8]]), v) == d


def test_unimodular_factors():
    s = check_decomposition([[2, 4], [6, 8]])
    assert det_is_unit(s.u)
    assert det_is_unit(s.v)


def test_zero_and_empty():
    s = SmithForm([[0, 0], [0, 0]])
    assert s.rank == 0
    assert len(s.kernel_basis()) == 2
    s = SmithForm([])
    assert s.rank == 0 and s.kernel_basis() == []


def test_random_decompositions():
    rng = random.Random(7)
    for _ in range(60):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        mat = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        s = check_decomposition(mat)
        assert det_is_unit(s.u)
        assert det_is_unit(s.v)
        for vec in s.kernel_basis():
            assert all(sum(r[j] * vec[j] for j in range(cols)) == 0 for r in mat)


def test_solve_int():
    mat = [[2, 0], [0, 3]]
    s = SmithForm(mat)
    assert s.solve([4, 9]) == [2, 3]
    assert s.solve([1, 0]) is None
    # inconsistent overdetermined system
    s = SmithForm([[1], [1]])
    assert s.solve([2, 3]) is None
    assert s.solve([5, 5]) == [5]


def test_random_solve_roundtrip():
    rng = random.Random(11)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        mat = [[rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randrange(-5, 6) for _ in range(cols)]
        b = [sum(mat[i][j] * x[j] for j in range(cols)) for i in range(rows)]
        sol = SmithForm(mat).solve(b)
        assert sol is not None
        assert [sum(mat[i][j] * sol[j] for j in range(cols))
                for i in range(rows)] == b


def span_mod(gens, cols, m):
    spanned = {tuple([0] * cols)}
    frontier = [tuple([0] * cols)]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = tuple((a + b) % m for a, b in zip(v, g))
            if w not in spanned:
                spanned.add(w)
                frontier.append(w)
    return spanned


def test_kernel_mod():
    # x + 2y = 0 mod 4 has solution module generated by (2, 1)
    gens = SmithForm([[1, 2]]).kernel_mod(4)
    expected = {(x, y) for x in range(4) for y in range(4) if (x + 2 * y) % 4 == 0}
    assert span_mod(gens, 2, 4) == expected


def test_kernel_mod_matches_brute_force():
    rng = random.Random(3)
    for _ in range(30):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        m = rng.choice([2, 3, 4, 6])
        mat = [[rng.randrange(0, m) for _ in range(cols)] for _ in range(rows)]
        spanned = span_mod(SmithForm(mat).kernel_mod(m), cols, m)
        import itertools
        brute = set()
        for vec in itertools.product(range(m), repeat=cols):
            if all(sum(r[j] * vec[j] for j in range(cols)) % m == 0 for r in mat):
                brute.add(vec)
        assert spanned == brute


def test_solve_mod():
    rng = random.Random(5)
    for _ in range(40):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        m = rng.choice([2, 3, 4, 5, 6, 8])
        mat = [[rng.randrange(0, m) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randrange(0, m) for _ in range(cols)]
        b = [sum(mat[i][j] * x[j] for j in range(cols)) % m for i in range(rows)]
        sol = SmithForm(mat).solve_mod(b, m)
        assert sol is not None
        assert [sum(mat[i][j] * sol[j] for j in range(cols)) % m
                for i in range(rows)] == b
        bad = list(b)
        # perturb the rhs; either solvable or correctly rejected
        bad[0] = (bad[0] + 1) % m
        sol2 = SmithForm(mat).solve_mod(bad, m)
        if sol2 is not None:
            assert [sum(mat[i][j] * sol2[j] for j in range(cols)) % m
                    for i in range(rows)] == bad


def test_identity_matrix():
    assert identity_matrix(3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
