"""Edge-path presentations of π_1 and bounded Tietze simplification.

The only question asked here is "does the presentation collapse to the
trivial group within a budget"; a negative answer is never claimed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import SimplicialComplex

Word = list[int]  # generator g is +(g+1), its inverse -(g+1)


@dataclass
class Presentation:
    generators: int
    relators: list[Word]


def edge_path_presentation(K: SimplicialComplex) -> Presentation:
    """π_1 of the component of the smallest vertex: generators are non-tree edges."""
    if K.is_empty():
        return Presentation(0, [])
    root = K.vertices[0]
    parent = {root: None}
    queue = deque([root])
    tree = set()
    while queue:
        v = queue.popleft()
        for w in K.neighbours(v):
            if w not in parent:
                parent[w] = v
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    gens: dict[tuple, int] = {}
    for e in K.simplices_of_dim(1):
        if e[0] in parent and e not in tree:
            gens[e] = len(gens)

    def word(a, b) -> Word:  # a < b, edge oriented a -> b
        g = gens.get((a, b))
        return [] if g is None else [g + 1]

    rels = []
    for a, b, c in K.simplices_of_dim(2):
        if a not in parent:
            continue
        w = word(a, b) + word(b, c) + [-x for x in reversed(word(a, c))]
        if w:
            rels.append(w)
    return Presentation(len(gens), rels)


def _free_reduce(w: Word) -> Word:
    out: Word = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    # cyclic reduction
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _substitute(w: Word, g: int, replacement: Word) -> Word:
    inv = [-x for x in reversed(replacement)]
    out: Word = []
    for x in w:
        if x == g:
            out.extend(replacement)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return out


def tietze_trivial(p: Presentation, step_budget: int = 10_000, length_cap: int = 200_000) -> bool | None:
    """True if the presentation reduces to the trivial group, None if undecided."""
    alive = set(range(1, p.generators + 1))
    rels = [_free_reduce(r) for r in p.relators]
    rels = [r for r in rels if r]
    steps = 0
    while alive:
        steps += 1
        if steps > step_budget:
            return None
        # pick the shortest relator in which some generator occurs exactly once
        best = None
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, c in counts.items():
                if c == 1 and (best is None or len(r) < best[0]):
                    best = (len(r), idx, g)
                    break
        if best is None:
            return None
        _, idx, g = best
        r = rels.pop(idx)
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        # r = u g^s v = 1  =>  g^s = u^{-1} v^{-1}  =>  g = (v u)^{-s}
        u, s, v = r[:pos], r[pos], r[pos + 1:]
        vu = v + u
        replacement = [-x for x in reversed(vu)] if s > 0 else vu
        rels = [_free_reduce(_substitute(w, g, replacement)) for w in rels]
        rels = [w for w in rels if w]
        alive.discard(g)
        if sum(len(w) for w in rels) > length_cap:
            return None
    return True


def simply_connected(K: SimplicialComplex, step_budget: int = 10_000) -> bool | None:
    """True if K is connected and its edge-path group Tietze-reduces to 1; None if undecided."""
    return tietze_trivial(edge_path_presentation(K), step_budget)
