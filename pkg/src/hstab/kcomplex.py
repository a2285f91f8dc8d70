"""Finite truncations of the complex of hyperbolic morphisms H -> M.

Vertices are the morphisms themselves (pairs (e, f)), restricted to
coefficients of absolute value at most ``bound``; a set of vertices is a
simplex when the images are pairwise orthogonal, so the complex is the clique
complex of its orthogonality graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import forms
from .forms import HyperbolicMorphism, ModuleMorphism, QuadraticModule
from .scomplex import SimplicialComplex, SimplicialMap

_CHUNK = 4096


def enumerate_hyperbolic_morphisms(M: QuadraticModule, bound: int) -> list[HyperbolicMorphism]:
    """All (e, f) with ||e||, ||f|| <= bound forming a hyperbolic pair, in lexicographic order."""
    if bound < 1:
        raise forms.FormsError("bound must be positive")
    if M.rank == 0:
        return []
    X = forms.isotropic_solutions(M, [], bound)  # lexicographically sorted
    G = np.array(M.gram, dtype=np.int64)
    XG = X @ G
    out: list[HyperbolicMorphism] = []
    for start in range(0, len(X), _CHUNK):
        block = XG[start:start + _CHUNK] @ X.T  # lam(x_i, x_j)
        rows, cols = np.nonzero(block == 1)
        for i, j in zip(rows.tolist(), cols.tolist()):
            out.append(HyperbolicMorphism(tuple(X[start + i].tolist()), tuple(X[j].tolist())))
    return out


def _orthogonality_graph(M: QuadraticModule, verts: list[HyperbolicMorphism]) -> list[list[int]]:
    n = len(verts)
    if n == 0:
        return []
    G = np.array(M.gram, dtype=np.int64)
    E = np.array([v.e for v in verts], dtype=np.int64)
    F = np.array([v.f for v in verts], dtype=np.int64)
    adj: list[list[int]] = [[] for _ in range(n)]
    for start in range(0, n, _CHUNK):
        sl = slice(start, start + _CHUNK)
        ok = np.ones((min(_CHUNK, n - start), n), dtype=bool)
        for A in (E[sl], F[sl]):
            AG = A @ G
            for B in (E, F):
                ok &= (AG @ B.T) == 0
        for i, row in enumerate(ok):
            adj[start + i] = [j for j in np.nonzero(row)[0].tolist() if j != start + i]
    return adj


@dataclass
class KaTruncation:
    module: QuadraticModule
    bound: int
    vertices: list[HyperbolicMorphism]
    adjacency: list[list[int]]
    max_dim: int | None = None
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def edges(self) -> list[tuple[HyperbolicMorphism, HyperbolicMorphism]]:
        return [(self.vertices[i], self.vertices[j])
                for i, nb in enumerate(self.adjacency) for j in nb if i < j]

    def is_simplex(self, sigma) -> bool:
        idx = [self._index.get(v) for v in sigma]
        if any(i is None for i in idx):
            return False
        return all(b in self.adjacency[a] for k, a in enumerate(idx) for b in idx[k + 1:])

    def _cliques(self, allowed: set[int]) -> SimplicialComplex:
        cap = self.max_dim if self.max_dim is not None else len(self.vertices)
        nbr = {i: set(j for j in self.adjacency[i] if j > i and j in allowed) for i in allowed}
        simplices: list[tuple] = []

        def grow(clique: list[int], cands: set[int]) -> None:
            simplices.append(tuple(self.vertices[i] for i in clique))
            if len(clique) > cap:
                return
            for w in sorted(cands):
                grow(clique + [w], cands & nbr[w])

        for v in sorted(allowed):
            grow([v], nbr[v])
        return SimplicialComplex(simplices, check=False)

    @cached_property
    def complex(self) -> SimplicialComplex:
        """Clique complex of the orthogonality graph, up to ``max_dim``."""
        return self._cliques(set(range(len(self.vertices))))

    def link(self, sigma) -> SimplicialComplex:
        """Lk(σ) without building the whole complex: cliques among common neighbours."""
        if not sigma:
            return self.complex
        if not self.is_simplex(sigma):
            raise forms.FormsError("sigma is not a simplex of the truncation")
        common = set(self.adjacency[self._index[sigma[0]]])
        for v in sigma[1:]:
            common &= set(self.adjacency[self._index[v]])
        return self._cliques(common)


def build_ka(M: QuadraticModule, bound: int, max_dim: int | None = None) -> KaTruncation:
    if not forms.is_nondegenerate(M):
        raise forms.FormsError("module is degenerate")
    verts = enumerate_hyperbolic_morphisms(M, bound)
    return KaTruncation(M, bound, verts, _orthogonality_graph(M, verts), max_dim)


@dataclass
class LinkRestriction:
    """Lk(σ) rewritten in a basis of the orthogonal complement of σ."""

    map: SimplicialMap
    complement: QuadraticModule
    basis: list[list[int]]
    bound: int  # coefficient bound needed in complement coordinates


def link_restriction(T: KaTruncation, sigma) -> LinkRestriction:
    M = T.module
    sigma = tuple(sorted(sigma))
    if sigma and not T.is_simplex(sigma):
        raise forms.FormsError("sigma is not a simplex of the truncation")
    if sigma:
        dom = forms.hyperbolic(len(sigma), M.param)
        cols = [c for h in sigma for c in h.vectors()]
        emb = ModuleMorphism(dom, M, [[c[i] for c in cols] for i in range(M.rank)])
    else:
        emb = ModuleMorphism(forms.hyperbolic(0, M.param), M, [[] for _ in range(M.rank)])
    C, basis = forms.orthogonal_complement(M, emb)
    Lk = T.link(sigma)
    assignment = {}
    for v in Lk.vertices:
        assignment[v] = HyperbolicMorphism(tuple(forms.coordinates(basis, v.e)),
                                           tuple(forms.coordinates(basis, v.f)))
    new_bound = max([1] + [h.max_coefficient() for h in assignment.values()])
    target = build_ka(C, new_bound, T.max_dim)
    return LinkRestriction(SimplicialMap(Lk, target.complex, assignment), C, basis, new_bound)
