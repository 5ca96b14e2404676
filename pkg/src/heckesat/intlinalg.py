"""Small exact integer/rational lattice routines (HNF, SNF, kernels).

Sizes here are tiny (matrices up to ~10x10), so the textbook algorithms are
used without any overflow concern thanks to Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .rootdata import Vector, solve_rational, vdot, vzero


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*M*V = D diagonal and U, V unimodular."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            again = False
            for i in range(t + 1, n):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        again = True
            for j in range(t + 1, m):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        again = True
            if not again:
                break
        t += 1
    for i in range(t):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    # enforce divisibility d_i | d_{i+1}
    r = t
    for i in range(r):
        for j in range(i + 1, r):
            if A[i][i] and A[j][j] % A[i][i] != 0:
                add_col(j, i, 1)
                # re-run the elimination at position i
                while True:
                    again = False
                    for k in range(i + 1, n):
                        if A[k][i] != 0:
                            q = A[k][i] // A[i][i]
                            add_row(i, k, -q)
                            if A[k][i] != 0:
                                swap_rows(i, k)
                                again = True
                    for k in range(i + 1, m):
                        if A[i][k] != 0:
                            q = A[i][k] // A[i][i]
                            add_col(i, k, -q)
                            if A[i][k] != 0:
                                swap_cols(i, k)
                                again = True
                    if not again:
                        break
    for i in range(r):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    return U, A, V


def integer_matrix(rows: Sequence[Sequence[Fraction]]):
    """Scale rational rows by the common denominator; return (int matrix, den)."""
    den = 1
    for row in rows:
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


def lattice_basis_from_generators(gens: Sequence[Vector]) -> list[Vector]:
    """A lattice basis (integer row echelon form) from rational generators."""
    gens = [g for g in gens if any(c != 0 for c in g)]
    if not gens:
        return []
    dim = len(gens[0])
    mat, den = integer_matrix(gens)
    rows = [list(r) for r in mat]
    basis_rows: list[list[int]] = []
    for col in range(dim):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                for k in range(dim):
                    r[k] -= q * pivot[k]
            rows = [r for r in rows if any(x != 0 for x in r)]
        nz = [r for r in rows if r[col] != 0]
        if nz:
            basis_rows.append(nz[0])
            rows = [r for r in rows if r is not nz[0]]
    if any(any(x != 0 for x in r) for r in rows):
        raise AssertionError("echelon reduction left uncleared rows")
    return [tuple(Fraction(x, den) for x in row) for row in basis_rows]


def integer_kernel(rows: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Basis of { x integral : M x = 0 } for a rational matrix given by rows."""
    mat, _ = integer_matrix(rows)
    n = len(mat)
    m = len(mat[0])
    U, D, V = smith_normal_form(mat)
    rank = sum(1 for i in range(min(n, m)) if D[i][i] != 0)
    cols = []
    for j in range(rank, m):
        cols.append(tuple(V[i][j] for i in range(m)))
    return cols


def lattice_intersect_span(basis: Sequence[Vector], span: Sequence[Vector]) -> list[Vector]:
    """Basis of the sublattice of Z-combinations of ``basis`` lying in span(span)."""
    dim = len(basis[0])
    # orthogonal complement conditions: x in span  <=>  proj_perp(x) = 0
    # build perp conditions by Gram-Schmidt-free route: solve for each basis
    # combination the residual after projecting onto span
    gram = [[vdot(a, b) for b in span] for a in span]
    try:
        gram_inv = _invert(gram)
    except ZeroDivisionError:
        raise ValueError("span vectors must be independent")
    conditions = []
    for j, b in enumerate(basis):
        coeffs = [sum(gram_inv[i][k] * vdot(span[k], b) for k in range(len(span))) for i in range(len(span))]
        proj = vzero(dim)
        for c, s in zip(coeffs, span):
            proj = tuple(p + c * si for p, si in zip(proj, s))
        conditions.append(tuple(x - p for x, p in zip(b, proj)))
    # x = sum c_j basis_j in span  <=>  sum c_j residual_j = 0
    rows = [[conditions[j][i] for j in range(len(basis))] for i in range(dim)]
    kernel = integer_kernel(rows)
    out = []
    for k in kernel:
        v = vzero(dim)
        for c, b in zip(k, basis):
            v = tuple(x + c * y for x, y in zip(v, b))
        out.append(v)
    return out


def quotient_representatives(
    big_basis: Sequence[Vector], sub_gens: Sequence[Vector]
) -> list[Vector]:
    """Coset representatives of <sub_gens> inside the lattice with basis big_basis.

    Requires the subgroup to have finite index.
    """
    cols = []
    for g in sub_gens:
        c = solve_rational(tuple(big_basis), tuple(Fraction(x) for x in g))
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError("subgroup generator outside the lattice")
        cols.append([int(x) for x in c])
    n = len(big_basis)
    M = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    U, D, V = smith_normal_form(M)
    diag = [D[i][i] if i < min(len(D), len(D[0])) else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("subgroup does not have finite index")
    Uinv = _int_inverse(U)
    reps = []

    def rec(i, current):
        if i == n:
            reps.append(list(current))
            return
        for r in range(diag[i]):
            rec(i + 1, current + [r])

    rec(0, [])
    out = []
    for r in reps:
        coeffs = [sum(Uinv[i][j] * r[j] for j in range(n)) for i in range(n)]
        v = vzero(len(big_basis[0]))
        for c, b in zip(coeffs, big_basis):
            v = tuple(x + c * y for x, y in zip(v, b))
        out.append(v)
    return out


def _invert(A):
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def _int_inverse(U):
    inv = _invert(U)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise AssertionError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out
