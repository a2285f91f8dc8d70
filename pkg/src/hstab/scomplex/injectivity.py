"""Four independent tests for a simplicial map being injective on every simplex."""

from __future__ import annotations

from .complex import SimplicialMap, link


def injective_on_simplices(f: SimplicialMap) -> bool:
    """(i) every simplex keeps its dimension."""
    return all(len(f.image(s)) == len(s) for s in f.domain.simplices)


def links_map_into_links(f: SimplicialMap) -> bool:
    """(ii) f(Lk σ) ⊂ Lk(f σ) for every simplex σ, links computed in both complexes."""
    return all(_link_condition(f, s) for s in f.domain.simplices)


def vertex_links_map_into_links(f: SimplicialMap) -> bool:
    """(iii) the condition of (ii) for vertices only."""
    return all(_link_condition(f, (v,)) for v in f.domain.vertices)


def edges_nondegenerate(f: SimplicialMap) -> bool:
    """(iv) no edge collapses to a vertex."""
    return all(f(a) != f(b) for a, b in f.domain.simplices_of_dim(1))


def _link_condition(f: SimplicialMap, sigma: tuple) -> bool:
    target = link(f.codomain, f.image(sigma)).simplices
    return all(f.image(t) in target for t in link(f.domain, sigma).simplices)


CRITERIA = {
    "i": injective_on_simplices,
    "ii": links_map_into_links,
    "iii": vertex_links_map_into_links,
    "iv": edges_nondegenerate,
}


def criteria_report(f: SimplicialMap) -> dict[str, bool]:
    return {name: test(f) for name, test in CRITERIA.items()}


def simplexwise_injective(f: SimplicialMap) -> bool:
    return edges_nondegenerate(f)
