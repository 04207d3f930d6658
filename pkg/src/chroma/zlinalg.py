"""Integer matrix utilities: Smith normal form and homogeneous congruences.

Used for quotients of finite abelian groups and for solving the linear
exponent systems that come out of cocycle conditions modulo N.
"""

from __future__ import annotations

import itertools


class SmithForm:
    """U * A * V == D with U, V unimodular and D diagonal, d_i | d_{i+1}.

    ``U_inv`` is maintained alongside so group quotients get an integral
    section for free.
    """

    def __init__(self, D, U, V, U_inv):
        self.D = D
        self.U = U
        self.V = V
        self.U_inv = U_inv

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def smith_normal_form(matrix: list[list[int]]) -> SmithForm:
    """Compute the Smith normal form of an integer matrix.

    Returns D (m x n), U (m x m), V (n x n), U_inv with U A V = D and
    nonnegative diagonal entries in divisibility order.
    """
    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    U_inv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in U_inv:  # U_inv <- U_inv * swap
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, c):
        # row_i += c * row_j ; U_inv gets the inverse op on columns
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in U_inv:
            r[j] -= c * r[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in U_inv:
            r[i] = -r[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, c):
        # col_i += c * col_j
        for row in A:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def col_neg(i):
        for row in A:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # find pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        row_swap(t, i)
        col_swap(t, j)
        if A[t][t] < 0:
            row_neg(t)
        again = False
        for i in range(t + 1, m):
            if A[i][t] != 0:
                q = A[i][t] // A[t][t]
                row_add(i, t, -q)
                if A[i][t] != 0:
                    again = True
        for j in range(t + 1, n):
            if A[t][j] != 0:
                q = A[t][j] // A[t][t]
                col_add(j, t, -q)
                if A[t][j] != 0:
                    again = True
        if again:
            continue
        # enforce divisibility: A[t][t] must divide the rest of the block
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue
        t += 1
    return SmithForm(A, U, V, U_inv)


def solve_homogeneous_mod(matrix: list[list[int]], modulus: int,
                          limit: int | None = None) -> list[tuple[int, ...]]:
    """All x in (Z/modulus)^n with matrix @ x == 0 (mod modulus).

    Enumerates via the Smith form; raises if the solution count exceeds
    ``limit`` (a guard against accidental explosions).
    """
    import math

    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if n == 0:
        return [()]
    if m == 0:
        matrix = [[0] * n]
        m = 1
    snf = smith_normal_form(matrix)
    diag = [snf.D[i][i] if i < m else 0 for i in range(n)]
    choice_sets = []
    for d in diag:
        g = math.gcd(d, modulus)
        if g == 0:
            g = modulus  # d == 0 and modulus | 0: free coordinate
        step = modulus // g
        choice_sets.append([step * w for w in range(g)])
    count = 1
    for cs in choice_sets:
        count *= len(cs)
    if limit is not None and count > limit:
        raise ValueError(f"solution space too large: {count} > {limit}")
    V = snf.V
    out = []
    for z in itertools.product(*choice_sets):
        x = tuple(sum(V[i][k] * z[k] for k in range(n)) % modulus for i in range(n))
        out.append(x)
    # dedupe while keeping deterministic order (V is unimodular so solutions
    # are already distinct, but keep the guard cheap and explicit)
    seen = set()
    uniq = []
    for x in out:
        if x not in seen:
            seen.add(x)
            uniq.append(x)
    return uniq
