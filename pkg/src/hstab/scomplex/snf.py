"""Smith normal form over the integers.

Two entry points: :func:`smith_normal_form` is dense and tracks the unimodular
transforms; :func:`elementary_divisors` works on sparse columns and returns
only the non-zero diagonal, which is all homology needs.  Pivots are always
chosen by least absolute value, which keeps coefficient growth in check on
boundary matrices (mostly unit pivots).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .. import intmat
from ..intmat import Matrix

SparseColumns = Sequence[dict[int, int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """U · A · V = S with U, V unimodular and S diagonal (d_i | d_{i+1})."""

    A: Matrix
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _min_nonzero(S: Matrix, t: int, rows: int, cols: int):
    best = None
    for i in range(t, rows):
        row = S[i]
        for j in range(t, cols):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def _snf(A: Sequence[Sequence[int]], cols: int, track: bool):
    rows = len(A)
    S = intmat.copy(A)
    U = intmat.identity(rows) if track else None
    V = intmat.identity(cols) if track else None

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            if track:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for R in (S, V) if track else (S,):
                for line in R:
                    line[i], line[j] = line[j], line[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for R in (S, U) if track else (S,):
            R[dst] = [x - q * y for x, y in zip(R[dst], R[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for R in (S, V) if track else (S,):
            for line in R:
                if line[src]:
                    line[dst] -= q * line[src]

    for t in range(min(rows, cols)):
        best = _min_nonzero(S, t, rows, cols)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
            # smaller remainder left in row/column t: move it to the pivot
            cand = None
            for i in range(t + 1, rows):
                if S[i][t] and (cand is None or abs(S[i][t]) < cand[0]):
                    cand = (abs(S[i][t]), i, None)
            for j in range(t + 1, cols):
                if S[t][j] and (cand is None or abs(S[t][j]) < cand[0]):
                    cand = (abs(S[t][j]), None, j)
            if cand is not None:
                if cand[1] is not None:
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[2])
                continue
            # divisibility: pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if track:
                U[t] = [-x for x in U[t]]
    return U, S, V


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> SmithDecomposition:
    rows, ncols = intmat.shape(A, cols)
    U, S, V = _snf(A, ncols, track=True)
    return SmithDecomposition(intmat.copy(A), U, S, V)


def snf_diagonal(A: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    rows, ncols = intmat.shape(A, cols)
    _, S, _ = _snf(A, ncols, track=False)
    return [S[i][i] for i in range(min(rows, ncols))]


def elementary_divisors(columns: SparseColumns, nrows: int) -> list[int]:
    """Non-zero SNF diagonal of a sparse matrix given by its columns, ascending."""
    rows: dict[int, dict[int, int]] = {}
    colsets: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colsets.setdefault(c, set()).add(r)
    units = 0
    while True:
        pivot = None
        for r in sorted(rows, key=lambda r: len(rows[r])):
            row = rows[r]
            unit_cols = [c for c, v in row.items() if v in (1, -1)]
            if unit_cols:
                c = min(unit_cols, key=lambda c: len(colsets[c]))
                pivot = (r, c)
                break
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        p = prow[c]
        for r2 in list(colsets[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            factor = row2[c] * p
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - factor * v
                if nv:
                    row2[c2] = nv
                    colsets.setdefault(c2, set()).add(r2)
                else:
                    row2.pop(c2, None)
                    colsets[c2].discard(r2)
            if not row2:
                del rows[r2]
        for c2 in prow:
            colsets[c2].discard(r)
        del colsets[c]
        units += 1
    rest: list[int] = []
    if rows:
        rlist = sorted(rows)
        clist = sorted({c for row in rows.values() for c in row})
        cpos = {c: j for j, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for i, r in enumerate(rlist):
            for c, v in rows[r].items():
                dense[i][cpos[c]] = v
        rest = [d for d in snf_diagonal(dense, len(clist)) if d]
    return [1] * units + sorted(rest)
