"""Seeded random instances for property tests and the acceptance suite."""

from __future__ import annotations

import random
from typing import Hashable, Mapping, Sequence

from . import forms, plrepair
from .forms import FormParameter, HyperbolicMorphism, Lam, ModuleMorphism, QuadraticModule
from .scomplex import SimplicialComplex, SimplicialMap, boundary_of_simplex, closure, join, zero_sphere


def random_complex(rng: random.Random, max_vertices: int = 8, max_facets: int = 6, max_size: int = 4,
                   labels: Sequence[Hashable] | None = None) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    verts = list(labels[:n]) if labels else list(range(n))
    facets = [rng.sample(verts, rng.randint(1, min(max_size, n))) for _ in range(rng.randint(1, max_facets))]
    return closure(facets + [[v] for v in verts])


def random_extension(rng: random.Random, K: SimplicialComplex, X: SimplicialComplex, fixed: Mapping | None = None,
                     node_budget: int = 20_000) -> dict | None:
    """A random simplicial map K -> X agreeing with ``fixed``, by backtracking (None if none found)."""
    h = dict(fixed or {})
    todo = [v for v in K.vertices if v not in h]
    rng.shuffle(todo)
    budget = [node_budget]

    def consistent(v) -> bool:
        # fully assigned simplices through v must land on simplices
        return all(tuple(sorted({h[w] for w in s})) in X.simplices
                   for s in K.cofaces((v,)) if all(w in h for w in s))

    def rec(i: int) -> bool:
        if i == len(todo):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        v = todo[i]
        cands = list(X.vertices)
        rng.shuffle(cands)
        for y in cands:
            h[v] = y
            if consistent(v) and rec(i + 1):
                return True
            del h[v]
        return False

    return h if rec(0) else None


def random_map(rng: random.Random, max_vertices: int = 8) -> SimplicialMap:
    K = random_complex(rng, max_vertices)
    L = random_complex(rng, max_vertices, max_facets=rng.randint(1, 8), max_size=rng.randint(1, 5))
    h = random_extension(rng, K, L)
    if h is None:  # a constant map always exists
        y = L.vertices[0]
        h = {v: y for v in K.vertices}
    return SimplicialMap(K, L, h)


# -- repair instances ---------------------------------------------------------


def join_of_zero_spheres(k: int) -> SimplicialComplex:
    X = zero_sphere("a0", "b0")
    for i in range(1, k):
        X = join(X, zero_sphere(f"a{i}", f"b{i}"))
    return X


def _closed_walk(rng: random.Random, X: SimplicialComplex, length: int, tries: int = 1000) -> list | None:
    """Closed edge walk of the given length with distinct consecutive vertices."""
    for _ in range(tries):
        w = [rng.choice(X.vertices)]
        for _ in range(length - 1):
            w.append(rng.choice(X.neighbours(w[-1])))
        if w[-1] != w[0] and tuple(sorted((w[-1], w[0]))) in X.simplices:
            return w
    return None


def random_repair_instance(rng: random.Random, n: int, X: SimplicialComplex):
    """(disk, boundary map, initial extension or None) with non-degenerate boundary edges."""
    if n == 1:
        disk = plrepair.interval(rng.randint(1, 5))
        a, b = disk.boundary.vertices
        bmap = {a: rng.choice(X.vertices), b: rng.choice(X.vertices)}
    else:
        disk = plrepair.fan_disk(rng.randint(3, 6)) if rng.random() < 0.6 else plrepair.square_grid_disk(rng.randint(1, 2))
        cyc = plrepair.boundary_cycle(disk)
        walk = _closed_walk(rng, X, len(cyc))
        if walk is None:
            raise RuntimeError("no closed walk of the required length")
        bmap = dict(zip(cyc, walk))
    initial = random_extension(rng, disk.complex, X, bmap) if rng.random() < 0.8 else None
    return disk, bmap, initial


# -- forms instances ------------------------------------------------------------


EVEN = FormParameter(-1, Lam.EVEN)


def random_hyperbolic_morphism(rng: random.Random, M: QuadraticModule, coeff: int = 1,
                               tries: int = 100_000) -> HyperbolicMorphism:
    r = M.rank
    for _ in range(tries):
        e = [rng.randint(-coeff, coeff) for _ in range(r)]
        if not any(e) or forms.alpha_eval(M, e) != 0:
            continue
        for _ in range(200):
            f = [rng.randint(-coeff, coeff) for _ in range(r)]
            if M.form(e, f) == 1 and forms.alpha_eval(M, f) == 0:
                h = HyperbolicMorphism(tuple(e), tuple(f))
                if forms.is_hyperbolic_morphism(M, h):
                    return h
    raise RuntimeError("no hyperbolic morphism sampled")


_TWISTS = (((1, 0), (0, 1)), ((0, -1), (1, 0)), ((1, 2), (0, 1)), ((1, 0), (2, 1)), ((-1, 0), (0, -1)))


def random_block_isomorphism(rng: random.Random, g: int, param: FormParameter = EVEN) -> ModuleMorphism:
    """phi: H^{+g} ⊕ H -> H^{+(g+1)} permuting hyperbolic blocks and twisting each by an automorphism of H."""
    src = forms.direct_sum(forms.hyperbolic(g, param), forms.hyperbolic(1, param))
    dst = forms.hyperbolic(g + 1, param)
    perm = list(range(g + 1))
    rng.shuffle(perm)
    A = [[0] * (2 * g + 2) for _ in range(2 * g + 2)]
    for i, j in enumerate(perm):
        t = rng.choice(_TWISTS)
        if param.lam == Lam.FULL:
            t = rng.choice(_TWISTS + (((1, 1), (0, 1)), ((1, 0), (1, 1))))
        for a in range(2):
            for b in range(2):
                A[2 * j + a][2 * i + b] = t[a][b]
    return ModuleMorphism(src, dst, A)


def simplex_boundaries(max_n: int = 5) -> list[SimplicialComplex]:
    return [boundary_of_simplex(n) for n in range(1, max_n + 1)]
