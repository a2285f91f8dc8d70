"""Integral chain complexes and their homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .complex import SimplicialComplex
from .semisimplicial import AugmentedSemiSimplicialSet, SemiSimplicialSet
from .snf import elementary_divisors


class ChainError(ValueError):
    pass


@dataclass
class ChainComplex:
    """Free chain complex: ``ranks[k]`` = rank of C_k, ``boundaries[k]`` : C_k -> C_{k-1}.

    Boundaries are sparse: one ``{row: coefficient}`` dict per basis element
    of C_k.  Missing boundaries are zero.
    """

    ranks: dict[int, int]
    boundaries: dict[int, list[dict[int, int]]] = field(default_factory=dict)

    def __post_init__(self):
        for k, cols in self.boundaries.items():
            if len(cols) != self.ranks.get(k, 0):
                raise ChainError(f"boundary {k} has {len(cols)} columns, C_{k} has rank {self.ranks.get(k, 0)}")
            n = self.ranks.get(k - 1, 0)
            if any(r < 0 or r >= n for col in cols for r in col):
                raise ChainError(f"boundary {k} leaves C_{k - 1}")

    def degrees(self) -> list[int]:
        return sorted(k for k, r in self.ranks.items() if r)

    def boundary(self, k: int) -> list[dict[int, int]]:
        return self.boundaries.get(k, [{} for _ in range(self.ranks.get(k, 0))])

    def dense_boundary(self, k: int) -> list[list[int]]:
        rows = self.ranks.get(k - 1, 0)
        cols = self.boundary(k)
        out = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def square_violations(self) -> list[int]:
        """Degrees k with ∂_{k-1} ∘ ∂_k != 0."""
        bad = []
        for k in sorted(self.boundaries):
            lower = self.boundaries.get(k - 1)
            if not lower:
                continue
            for col in self.boundaries[k]:
                acc: dict[int, int] = {}
                for r, v in col.items():
                    for r2, w in lower[r].items():
                        acc[r2] = acc.get(r2, 0) + v * w
                if any(acc.values()):
                    bad.append(k)
                    break
        return bad

    def euler_characteristic(self) -> int:
        return sum(r if k % 2 == 0 else -r for k, r in self.ranks.items())


@dataclass(frozen=True)
class HomologyProfile:
    """Per degree: (betti number, torsion coefficients > 1 in divisibility order)."""

    groups: tuple[tuple[int, int, tuple[int, ...]], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, tuple[int, Sequence[int]]]) -> "HomologyProfile":
        return cls(tuple((k, b, tuple(t)) for k, (b, t) in sorted(d.items())))

    def as_dict(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        return {k: (b, t) for k, b, t in self.groups}

    def betti(self, k: int) -> int:
        return self.as_dict().get(k, (0, ()))[0]

    def torsion(self, k: int) -> tuple[int, ...]:
        return self.as_dict().get(k, (0, ()))[1]

    def is_zero(self, k: int) -> bool:
        return self.betti(k) == 0 and not self.torsion(k)

    def nonzero_degrees(self) -> list[int]:
        return [k for k, b, t in self.groups if b or t]

    def betti_numbers(self) -> dict[int, int]:
        return {k: b for k, b, _ in self.groups if b}

    def euler_characteristic(self) -> int:
        return sum(b if k % 2 == 0 else -b for k, b, _ in self.groups)

    def __str__(self) -> str:
        parts = []
        for k, b, t in self.groups:
            if not b and not t:
                continue
            terms = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{d}" for d in t]
            parts.append(f"H_{k} = " + " + ".join(terms))
        return ", ".join(parts) or "0"


def homology(C: ChainComplex, degrees: Iterable[int] | None = None) -> HomologyProfile:
    """H_k = ker ∂_k / im ∂_{k+1}, via elementary divisors."""
    if C.square_violations():
        raise ChainError("boundary of boundary is non-zero")
    degs = sorted(set(degrees) if degrees is not None else set(C.ranks))
    divs: dict[int, list[int]] = {}

    def divisors(k: int) -> list[int]:
        if k not in divs:
            divs[k] = elementary_divisors(C.boundary(k), C.ranks.get(k - 1, 0)) if C.ranks.get(k, 0) else []
        return divs[k]

    out = {}
    for k in degs:
        n = C.ranks.get(k, 0)
        rk_out = len(divisors(k))
        d_in = divisors(k + 1)
        betti = n - rk_out - len(d_in)
        out[k] = (betti, tuple(d for d in d_in if d > 1))
    return HomologyProfile.from_dict(out)


def simplicial_chain_complex(K: SimplicialComplex, reduced: bool = False,
                             max_degree: int | None = None) -> ChainComplex:
    """Chains on sorted simplices, ∂ = Σ (-1)^i (delete vertex i).

    ``reduced`` adds C_{-1} = Z with the augmentation; ``max_degree`` keeps
    chains up to that degree (plus the next one so H_max is correct).
    """
    top = K.dim if max_degree is None else min(K.dim, max_degree + 1)
    ranks: dict[int, int] = {}
    bnd: dict[int, list[dict[int, int]]] = {}
    index: dict[int, dict[tuple, int]] = {}
    for k in range(top + 1):
        simps = K.simplices_of_dim(k)
        ranks[k] = len(simps)
        index[k] = {s: i for i, s in enumerate(simps)}
    for k in range(1, top + 1):
        cols = []
        for s in K.simplices_of_dim(k):
            col = {}
            for i in range(len(s)):
                col[index[k - 1][s[:i] + s[i + 1:]]] = (-1) ** i
            cols.append(col)
        bnd[k] = cols
    if reduced:
        ranks[-1] = 1
        bnd[0] = [{0: 1} for _ in range(ranks.get(0, 0))]
        ranks.setdefault(0, 0)
    return ChainComplex(ranks, bnd)


def simplicial_homology(K: SimplicialComplex, reduced: bool = False, max_degree: int | None = None) -> HomologyProfile:
    C = simplicial_chain_complex(K, reduced=reduced, max_degree=max_degree)
    lo = -1 if reduced else 0
    hi = K.dim if max_degree is None else max_degree
    return homology(C, range(lo, max(hi, lo) + 1))


def semisimplicial_chain_complex(X: SemiSimplicialSet) -> ChainComplex:
    """Unnormalised chains: C_p free on S_p, ∂ = Σ (-1)^i d_i."""
    ranks = {p: len(level) for p, level in enumerate(X.levels)}
    bnd = {}
    for p in range(1, len(X.levels)):
        cols = []
        for k in range(len(X.levels[p])):
            col: dict[int, int] = {}
            for i in range(p + 1):
                j = X.faces[p][i][k]
                col[j] = col.get(j, 0) + (-1) ** i
            cols.append({r: v for r, v in col.items() if v})
        bnd[p] = cols
    return ChainComplex(ranks, bnd)


def augmented_chain_complex(X: AugmentedSemiSimplicialSet) -> ChainComplex:
    """Chains including C_{-1} = Z[S_{-1}] with ∂_0 the augmentation."""
    C = semisimplicial_chain_complex(X.base)
    ranks = dict(C.ranks)
    ranks[-1] = len(X.augmentation_level)
    ranks.setdefault(0, 0)
    bnd = dict(C.boundaries)
    bnd[0] = [{j: 1} for j in X.augmentation]
    return ChainComplex(ranks, bnd)
