"""Exact dense linear algebra over the rationals.

Matrices are lists of lists of ``Fraction``.  Rank and determinant use
fraction-free (Bareiss) elimination on row-scaled integer matrices, so the
results are exact; solving and inversion use ordinary Gauss-Jordan elimination
over ``Fraction``.  Right-hand sides of :func:`solve` may hold any values that
support addition and multiplication by ``Fraction`` (e.g. polynomials), since
only the pivot column requires division.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import SingularSystem

Matrix = list  # list[list[Fraction]]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_vec(A: Matrix, x: list) -> list:
    return [sum((a * xv for a, xv in zip(row, x)), start=Fraction(0)) for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), start=Fraction(0)) for col in cols] for row in A]


def inf_norm(A: Matrix) -> Fraction:
    return max(sum(abs(x) for x in row) for row in A)


def solve(A: Matrix, B: Matrix) -> Matrix:
    """Solve A X = B exactly for the n x m matrix X.

    Raises SingularSystem when A is singular.  B entries only need +, - and
    multiplication by Fraction.
    """
    n = len(A)
    a = [row[:] for row in A]
    x = [row[:] for row in B]
    m = len(x[0]) if n else 0
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise SingularSystem(f"singular at column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            x[col], x[piv] = x[piv], x[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        x[col] = [v * inv for v in x[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                x[r] = [v - f * w for v, w in zip(x[r], x[col])]
    return x


def solve_vec(A: Matrix, b: list) -> list:
    return [row[0] for row in solve(A, [[v] for v in b])]


def inverse(A: Matrix) -> Matrix:
    return solve(A, identity(len(A)))


def _integer_rows(A: Matrix) -> list:
    """Scale each row by the lcm of its denominators (rank/det-sign safe)."""
    out = []
    for row in A:
        den = 1
        for v in row:
            d = Fraction(v).denominator
            den = den // gcd(den, d) * d
        out.append([int(v * den) for v in row])
    return out


def bareiss(rows: list) -> tuple[int, int]:
    """Fraction-free elimination on an integer matrix.

    Returns (rank, det) where det is the determinant when the matrix is
    square and of full rank, else 0.  Input rows are consumed.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        prc = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * prc - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = prc
        r += 1
    det = sign * prev if (m == n and r == n) else 0
    return r, det


def rank(A: Matrix) -> int:
    if not A:
        return 0
    return bareiss(_integer_rows(A))[0]


def det_is_zero(A: Matrix) -> bool:
    return bareiss(_integer_rows(A))[1] == 0


def det(A: Matrix) -> Fraction:
    """Exact determinant (via Bareiss on scaled integer rows)."""
    if not A:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in A:
        den = 1
        for v in row:
            d = Fraction(v).denominator
            den = den // gcd(den, d) * d
        scale *= den
        rows.append([int(v * den) for v in row])
    return Fraction(bareiss(rows)[1], 1) / scale
