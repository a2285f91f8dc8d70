"""Finite abstract simplicial complexes and simplicial maps.

Simplices are stored as sorted tuples of vertex ids, so vertex ids must be
mutually comparable (ints, strings, or tuples of those).
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

Simplex = tuple


class ComplexError(ValueError):
    pass


def _canon(simplex: Iterable) -> Simplex:
    s = tuple(sorted(set(simplex)))
    return s


class SimplicialComplex:
    """A downward-closed family of non-empty finite vertex sets."""

    def __init__(self, simplices: Iterable[Iterable] = (), *, check: bool = True):
        simps = frozenset(_canon(s) for s in simplices)
        if () in simps:
            simps = simps - {()}
        if check:
            for s in simps:
                if len(s) > 1:
                    for face in itertools.combinations(s, len(s) - 1):
                        if face not in simps:
                            raise ComplexError(f"not downward closed: {face} missing below {s}")
        self.simplices: frozenset[Simplex] = simps

    # -- basic structure -------------------------------------------------

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(s[0] for s in self.simplices if len(s) == 1))

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    @property
    def dim(self) -> int:
        return max(self.by_dim, default=-1)

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return self.by_dim.get(k, [])

    @cached_property
    def facets(self) -> list[Simplex]:
        out = []
        for s in self.simplices:
            sset = set(s)
            maximal = True
            for v in self.neighbours(s[0]):
                if v not in sset and _canon(s + (v,)) in self.simplices:
                    maximal = False
                    break
            if maximal:
                out.append(s)
        return sorted(out, key=lambda s: (-len(s), s))

    @cached_property
    def _star_index(self) -> dict[Hashable, list[Simplex]]:
        idx: dict[Hashable, list[Simplex]] = {}
        for s in self.simplices:
            for v in s:
                idx.setdefault(v, []).append(s)
        return idx

    def cofaces(self, sigma: Sequence) -> list[Simplex]:
        """All simplices containing sigma (sigma included)."""
        sig = _canon(sigma)
        if not sig:
            return sorted(self.simplices)
        sset = set(sig)
        return [s for s in self._star_index.get(sig[0], []) if sset.issubset(s)]

    def neighbours(self, v) -> list:
        return sorted({w for s in self._star_index.get(v, []) if len(s) == 2 for w in s if w != v})

    def __contains__(self, simplex) -> bool:
        return _canon(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector()}, facets={len(self.facets)})"

    def is_empty(self) -> bool:
        return not self.simplices

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim.get(k, [])) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def full_subcomplex(self, vertices: Iterable) -> "SimplicialComplex":
        vs = set(vertices)
        return SimplicialComplex((s for s in self.simplices if vs.issuperset(s)), check=False)

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex((s for s in self.simplices if len(s) <= k + 1), check=False)

    def relabel(self, mapping: Mapping) -> "SimplicialComplex":
        if len(set(mapping[v] for v in self.vertices)) != len(self.vertices):
            raise ComplexError("relabelling must be injective")
        return SimplicialComplex((tuple(mapping[v] for v in s) for s in self.simplices), check=False)

    def is_flag(self) -> bool:
        """True iff every clique of the 1-skeleton is a simplex."""
        adj = {v: set(self.neighbours(v)) for v in self.vertices}

        def extend(clique: tuple, cands: set) -> bool:
            if clique not in self.simplices:
                return False
            return all(extend(clique + (w,), {u for u in cands & adj[w] if u > w}) for w in sorted(cands))

        return all(extend((v,), {u for u in adj[v] if u > v}) for v in self.vertices)


def closure(maximal: Iterable[Iterable]) -> SimplicialComplex:
    """Smallest simplicial complex containing the given simplices."""
    out: set[Simplex] = set()
    for s in maximal:
        s = _canon(s)
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(itertools.combinations(s, k))
    return SimplicialComplex(out, check=False)


def link(X: SimplicialComplex, sigma: Sequence) -> SimplicialComplex:
    """{tau : tau ∩ sigma = ∅, tau ∪ sigma ∈ X}."""
    sig = _canon(sigma)
    if not sig:
        return X
    if sig not in X.simplices:
        raise ComplexError(f"{sig} is not a simplex")
    sset = set(sig)
    out = [tuple(v for v in s if v not in sset) for s in X.cofaces(sig) if len(s) > len(sig)]
    return SimplicialComplex(out, check=False)


def star(X: SimplicialComplex, sigma: Sequence) -> SimplicialComplex:
    """Closed star: all faces of simplices containing sigma."""
    return closure(X.cofaces(sigma))


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    if set(X.vertices) & set(Y.vertices):
        raise ComplexError("join needs disjoint vertex sets")
    xs = [()] + sorted(X.simplices)
    ys = [()] + sorted(Y.simplices)
    return SimplicialComplex((a + b for a in xs for b in ys if a or b), check=False)


def simplex(vertices: Iterable) -> SimplicialComplex:
    return closure([tuple(vertices)])


def boundary_of_simplex(n: int, offset: int = 0) -> SimplicialComplex:
    """∂Δ^n on vertices offset..offset+n (an (n-1)-sphere)."""
    vs = range(offset, offset + n + 1)
    return closure(itertools.combinations(vs, n))


def zero_sphere(a, b) -> SimplicialComplex:
    return SimplicialComplex([(a,), (b,)])


def cone(X: SimplicialComplex, apex) -> SimplicialComplex:
    return join(SimplicialComplex([(apex,)]), X)


def octahedron() -> SimplicialComplex:
    """S^0 * S^0 * S^0 on vertices 0..5 with antipodes (0,1), (2,3), (4,5)."""
    return join(join(zero_sphere(0, 1), zero_sphere(2, 3)), zero_sphere(4, 5))


def rp2_six_vertex() -> SimplicialComplex:
    """The minimal 6-vertex triangulation of the real projective plane."""
    facets = [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
    ]
    return closure(facets)


def disjoint_union(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    if set(X.vertices) & set(Y.vertices):
        raise ComplexError("vertex ids collide")
    return SimplicialComplex(X.simplices | Y.simplices, check=False)


class SimplicialMap:
    """A vertex map sending every simplex of the domain to a simplex of the codomain."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex, assignment: Mapping,
                 *, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.assignment = dict(assignment)
        if check:
            missing = [v for v in domain.vertices if v not in self.assignment]
            if missing:
                raise ComplexError(f"vertices without image: {missing[:5]}")
            for s in domain.simplices:
                if self.image(s) not in codomain.simplices:
                    raise ComplexError(f"image of {s} is not a simplex")

    def __call__(self, v):
        return self.assignment[v]

    def image(self, sigma: Iterable) -> Simplex:
        return _canon(self.assignment[v] for v in sigma)

    def image_complex(self, sub: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex((self.image(s) for s in sub.simplices), check=False)

    def __repr__(self) -> str:
        return f"SimplicialMap({len(self.domain.vertices)} -> {len(self.codomain.vertices)} vertices)"
