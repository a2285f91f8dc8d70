"""E^1 and E^2 pages of the spectral sequence of an augmented semisimplicial set.

For a semisimplicial *set* every level is discrete, so E^1 lives in the row
q = 0: E^1_{p,0} = Z[S_p] and d^1 = Σ (-1)^i (d_i)_*.  Including the
augmentation column p = -1 makes E^2 the homology of the augmented chain
complex, i.e. H_{p+1}(S_{-1}, |X|).  Levelwise chain-complex input fills
the higher rows; its d^1 is computed on rational homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .. import intmat
from ..scomplex.homology import (ChainComplex, HomologyProfile, augmented_chain_complex, homology,
                                 semisimplicial_chain_complex)
from ..scomplex.semisimplicial import AugmentedSemiSimplicialSet

Entry = tuple[int, tuple[int, ...]]  # (rank, torsion)


@dataclass
class SpectralPage:
    """Entries (p, q) -> (rank, torsion); ``differentials[(p, q)]`` leaves (p, q) as sparse columns."""

    r: int
    entries: dict[tuple[int, int], Entry]
    differentials: dict[tuple[int, int], list[dict[int, int]]] = field(default_factory=dict)
    augmented: bool = True
    source: object = None

    def rank(self, p: int, q: int) -> int:
        return self.entries.get((p, q), (0, ()))[0]

    def is_zero(self, p: int, q: int) -> bool:
        rk, tors = self.entries.get((p, q), (0, ()))
        return rk == 0 and not tors

    def euler_characteristic(self) -> int:
        return sum((1 if (p + q) % 2 == 0 else -1) * rk for (p, q), (rk, _) in self.entries.items())

    def support(self) -> list[tuple[int, int]]:
        return sorted(k for k in self.entries if not self.is_zero(*k))

    def table(self) -> list[str]:
        """Rows q (top down) of ranks, columns p; torsion written as +Z/d."""
        if not self.entries:
            return []
        ps = sorted({p for p, _ in self.entries})
        qs = sorted({q for _, q in self.entries}, reverse=True)
        cells = {}
        for (p, q), (rk, tors) in self.entries.items():
            cells[(p, q)] = str(rk) + "".join(f"+Z/{d}" for d in tors)
        width = max(len(c) for c in cells.values())
        width = max(width, max(len(str(p)) for p in ps))
        lines = []
        for q in qs:
            lines.append(f"q={q:<3}" + " ".join(cells.get((p, q), "0").rjust(width) for p in ps))
        lines.append("p=   " + " ".join(str(p).rjust(width) for p in ps))
        return lines


@dataclass
class LevelwiseChains:
    """A semisimplicial chain complex: one ChainComplex per level p >= 0 (p = -1 optional).

    ``faces[p][i]`` is the chain map d_i: level p -> level p-1, given per
    degree q as sparse columns.
    """

    levels: dict[int, ChainComplex]
    faces: dict[int, list[dict[int, list[dict[int, int]]]]] = field(default_factory=dict)


def _chains(X: AugmentedSemiSimplicialSet, augmented: bool) -> ChainComplex:
    return augmented_chain_complex(X) if augmented else semisimplicial_chain_complex(X.base)


def e1_page(X, augmented: bool = True) -> SpectralPage:
    """E^1 of an augmented semisimplicial set, or of levelwise chain input."""
    if isinstance(X, LevelwiseChains):
        return _e1_levelwise(X)
    C = _chains(X, augmented)
    lo = -1 if augmented else 0
    entries = {(p, 0): (C.ranks.get(p, 0), ()) for p in range(lo, X.base.top + 1)}
    diffs = {(p, 0): C.boundary(p) for p in range(lo + 1, X.base.top + 1)}
    return SpectralPage(1, entries, diffs, augmented, X)


def _e1_levelwise(X: LevelwiseChains) -> SpectralPage:
    entries = {}
    for p, C in X.levels.items():
        H = homology(C)
        for q, b, t in H.groups:
            entries[(p, q)] = (b, t)
    return SpectralPage(1, entries, {}, -1 in X.levels, X)


def d1(page: SpectralPage) -> dict[tuple[int, int], list[list[int]]]:
    """Dense d^1 matrices, keyed by the source (p, q)."""
    if page.r != 1:
        raise ValueError("d1 is defined on the E^1 page")
    out = {}
    for (p, q), cols in sorted(page.differentials.items()):
        rows = page.rank(p - 1, q)
        M = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                M[i][j] = v
        out[(p, q)] = M
    return out


def d1_squared_violations(page: SpectralPage) -> list[tuple[int, int]]:
    mats = d1(page)
    bad = []
    for (p, q), A in mats.items():
        B = mats.get((p - 1, q))
        if B is None or not A or not B:
            continue
        if not intmat.is_zero(intmat.matmul(B, A, inner=len(A), cols=len(A[0]) if A else 0)):
            bad.append((p, q))
    return bad


def e2_page(page: SpectralPage) -> SpectralPage:
    """Homology of (E^1, d^1)."""
    if page.r != 1:
        raise ValueError("e2_page needs the E^1 page")
    if isinstance(page.source, LevelwiseChains):
        return _e2_levelwise(page)
    qs = sorted({q for _, q in page.entries})
    entries = {}
    for q in qs:
        ps = sorted(p for p, qq in page.entries if qq == q)
        ranks = {p: page.rank(p, q) for p in ps}
        bnd = {p: page.differentials[(p, q)] for p in ps if (p, q) in page.differentials}
        H = homology(ChainComplex(ranks, bnd), ps)
        for p, b, t in H.groups:
            entries[(p, q)] = (b, t)
    return SpectralPage(2, entries, {}, page.augmented, page.source)


def total_homology(X: AugmentedSemiSimplicialSet) -> dict[str, HomologyProfile]:
    """Homology of the realisation and of the augmented complex.

    ``absolute``: H_*(|X|) from the unnormalised chains.
    ``augmented``: homology of the chains with C_{-1} = Z[S_{-1}], whose degree p
    part is the relative group H_{p+1}(S_{-1}, |X|) (listed under ``relative``).
    """
    top = X.base.top
    absolute = homology(semisimplicial_chain_complex(X.base), range(0, top + 1)) if top >= 0 \
        else HomologyProfile(())
    aug = homology(augmented_chain_complex(X), range(-1, top + 1))
    relative = HomologyProfile(tuple((k + 1, b, t) for k, b, t in aug.groups))
    return {"absolute": absolute, "augmented": aug, "relative": relative}


def vanishing_line_check(X: AugmentedSemiSimplicialSet, bound: int) -> bool:
    """Relative homology H_{p+q+1}(S_{-1}, |X|) vanishes whenever p + q <= bound."""
    aug = total_homology(X)["augmented"]
    return all(aug.is_zero(k) for k in range(-1, bound + 1))


# -- levelwise input: rational ranks -----------------------------------------


def _rank(rows: Sequence[Sequence[int]], cols: int) -> int:
    return intmat.rank(rows) if rows and cols else 0


def _dense(cols: list[dict[int, int]], nrows: int) -> list[list[int]]:
    M = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            M[i][j] = v
    return M


def _alt_sum(X: LevelwiseChains, p: int, q: int) -> list[list[int]]:
    """Σ (-1)^i d_i in degree q as a dense matrix level p -> level p-1."""
    src, dst = X.levels[p].ranks.get(q, 0), X.levels[p - 1].ranks.get(q, 0)
    acc = [[0] * src for _ in range(dst)]
    for i, fmap in enumerate(X.faces.get(p, [])):
        M = _dense(fmap.get(q, [{} for _ in range(src)]), dst)
        for r in range(dst):
            for c in range(src):
                acc[r][c] += (-1) ** i * M[r][c]
    return acc


def _cycles_and_boundaries(C: ChainComplex, q: int):
    n = C.ranks.get(q, 0)
    Z = intmat.integer_kernel(C.dense_boundary(q), n) if q in C.boundaries else \
        [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    B = intmat.transpose(C.dense_boundary(q + 1), C.ranks.get(q + 1, 0)) if q + 1 in C.boundaries else []
    return Z, [b for b in B if any(b)]


def _e2_levelwise(page: SpectralPage) -> SpectralPage:
    X: LevelwiseChains = page.source
    entries = {}
    for (p, q) in sorted(page.entries):
        Zp, Bp = _cycles_and_boundaries(X.levels[p], q)
        n = X.levels[p].ranks.get(q, 0)
        rb = _rank(Bp, n)
        # kernel of the induced map H_q(p) -> H_q(p-1) over Q
        if p - 1 in X.levels and p in X.faces:
            D = _alt_sum(X, p, q)
            _, Bq = _cycles_and_boundaries(X.levels[p - 1], q)
            m = X.levels[p - 1].ranks.get(q, 0)
            images = [intmat.matvec(D, z) for z in Zp]
            r_img = _rank(images + Bq, m) - _rank(Bq, m)
            ker = len(Zp) - r_img
        else:
            ker = len(Zp)
        # image of the induced map from level p+1
        if p + 1 in X.levels and p + 1 in X.faces:
            D = _alt_sum(X, p + 1, q)
            Zn, _ = _cycles_and_boundaries(X.levels[p + 1], q)
            im = _rank([intmat.matvec(D, z) for z in Zn] + Bp, n) - rb
        else:
            im = 0
        entries[(p, q)] = (ker - rb - im, ())
    return SpectralPage(2, entries, {}, page.augmented, X)
