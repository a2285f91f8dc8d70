"""Exact integer matrix helpers.

Matrices are plain ``list[list[int]]`` (row-major); vectors are ``list[int]``.
Python integers never overflow, which is the whole reason these helpers exist
instead of numpy int64 arrays.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def shape(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    """Return (rows, cols). An empty matrix needs ``cols`` to be known."""
    if len(A) == 0:
        return 0, (cols or 0)
    return len(A), len(A[0])


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    r, c = shape(A, cols)
    return [[A[i][j] for i in range(r)] for j in range(c)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product A·B. ``inner``/``cols`` disambiguate shapes when A or B is empty."""
    ra, ca = shape(A, inner)
    rb, cb = shape(B, cols)
    if ca != rb:
        raise ValueError(f"shape mismatch: {ra}x{ca} times {rb}x{cb}")
    Bt = transpose(B, cb)
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    if A and len(A[0]) != len(x):
        raise ValueError("shape mismatch in matvec")
    return [sum(a * b for a, b in zip(row, x) if a and b) for row in A]


def bilinear(x: Sequence[int], G: Sequence[Sequence[int]], y: Sequence[int]) -> int:
    """x^T G y."""
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = G[i]
            total += xi * sum(g * yj for g, yj in zip(row, y) if g and yj)
    return total


def is_zero(A: Sequence[Sequence[int]]) -> bool:
    return all(v == 0 for row in A for v in row)


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence[int]]) -> int:
    if not A:
        return 0
    M = copy(A)
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            if M[i][c]:
                a, b = M[r][c], M[i][c]
                M[i] = [a * x - b * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def column_echelon(A: Sequence[Sequence[int]], cols: int) -> tuple[Matrix, Matrix, int]:
    """Unimodular column reduction: returns (A·V, V, r) with the last cols-r columns of A·V zero."""
    M = copy(A)
    V = identity(cols)
    piv = 0
    for i in range(len(M)):
        if piv >= cols:
            break
        row = M[i]
        for j in range(piv + 1, cols):
            b = row[j]
            if b == 0:
                continue
            a = row[piv]
            g, s, t = xgcd(a, b)
            p, q = -b // g, a // g
            for R in (M, V):
                for line in R:
                    x, y = line[piv], line[j]
                    line[piv] = s * x + t * y
                    line[j] = p * x + q * y
        if row[piv] != 0:
            piv += 1
    return M, V, piv


def integer_kernel(A: Sequence[Sequence[int]], cols: int) -> list[Vector]:
    """A Z-basis of {x in Z^cols : A x = 0}; the basis spans a saturated lattice."""
    _, V, r = column_echelon(A, cols)
    return [[V[i][j] for i in range(cols)] for j in range(r, cols)]


def hnf_rows(rows: Sequence[Sequence[int]], cols: int) -> list[Vector]:
    """Canonical (row Hermite normal form) basis of the lattice spanned by ``rows``."""
    M = [list(r) for r in rows if any(r)]
    out: list[Vector] = []
    c = 0
    while M and c < cols:
        nz = [r for r in M if r[c] != 0]
        if not nz:
            c += 1
            continue
        rest = [r for r in M if r[c] == 0]
        # gcd-combine all rows that are non-zero in column c
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[c] // p[c]
                r2 = [x - q * y for x, y in zip(r, p)]
                if r2[c] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = nxt
        p = nz[0]
        if p[c] < 0:
            p = [-x for x in p]
        out.append(p)
        M = rest
        c += 1
    # reduce entries above pivots into [0, pivot)
    for i in range(len(out)):
        pc = next(j for j, v in enumerate(out[i]) if v)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """A solution of A x = b over Q (free variables set to 0), or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(v) for v in A[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Vector | None:
    """The unique solution when A has full column rank and it is integral; else None."""
    x = solve_rational(A, b)
    if x is None or any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix (raises ValueError if not unimodular)."""
    n = len(A)
    if abs(det(A)) != 1:
        raise ValueError("matrix is not invertible over Z")
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_integer(A, e)
        assert x is not None
        cols.append(x)
    return transpose(cols, n)


def block_diagonal(blocks: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def max_abs(vectors: Sequence[Sequence[int]]) -> int:
    return max((abs(v) for vec in vectors for v in vec), default=0)
