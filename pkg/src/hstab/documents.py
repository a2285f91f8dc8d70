"""Canonical JSON documents for the core types.

Keys are sorted, separators compact, and integers outside the 53-bit safe
range are written as decimal strings.  Parsers accept either form, so
print ∘ parse is the identity on canonical text.
"""

from __future__ import annotations

import json
from typing import Any

from .forms import FormParameter, HyperbolicMorphism, Lam, ModuleMorphism, QuadraticModule
from .scomplex import (AugmentedSemiSimplicialSet, ChainComplex, HomologyProfile, SemiSimplicialSet,
                       SimplicialComplex, SimplicialMap)

SAFE = 2 ** 53 - 1


class DocumentError(ValueError):
    pass


def _encode(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if -SAFE <= x <= SAFE else str(x)
    if isinstance(x, float):
        raise DocumentError("floats are not allowed in documents")
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    raise DocumentError(f"cannot encode {type(x).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(_encode(doc), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None


def as_int(x: Any) -> int:
    if isinstance(x, bool):
        raise DocumentError("expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise DocumentError(f"expected an integer, got {x!r}")


def _ints(xs) -> list[int]:
    return [as_int(v) for v in xs]


def _vertex(x: Any):
    """Vertex labels are integers, strings, or lists of those (read back as tuples)."""
    if isinstance(x, list):
        return tuple(_vertex(v) for v in x)
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return x
    raise DocumentError(f"bad vertex label {x!r}")


def _need(doc: dict, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a {kind} document")
    if doc.get("type", kind) != kind:
        raise DocumentError(f"expected a {kind} document, got {doc.get('type')!r}")
    return doc


# -- forms ----------------------------------------------------------------


def param_doc(p: FormParameter) -> dict:
    return {"epsilon": p.epsilon, "lambda": p.lam.value}


def parse_param(doc: dict) -> FormParameter:
    try:
        return FormParameter(as_int(doc["epsilon"]), Lam(doc["lambda"]))
    except (KeyError, ValueError) as exc:
        raise DocumentError(f"bad form parameter: {exc}") from None


def module_doc(M: QuadraticModule) -> dict:
    return {"type": "quadratic_module", **param_doc(M.param), "gram": [list(r) for r in M.gram],
            "alpha": list(M.alpha)}


def parse_module(doc: dict) -> QuadraticModule:
    _need(doc, "quadratic_module")
    try:
        return QuadraticModule(parse_param(doc), [_ints(r) for r in doc["gram"]], _ints(doc["alpha"]))
    except KeyError as exc:
        raise DocumentError(f"quadratic module is missing {exc}") from None


def morphism_doc(f: ModuleMorphism) -> dict:
    return {"type": "morphism", "domain": module_doc(f.domain), "codomain": module_doc(f.codomain),
            "matrix": [list(r) for r in f.matrix]}


def parse_morphism(doc: dict) -> ModuleMorphism:
    _need(doc, "morphism")
    return ModuleMorphism(parse_module(doc["domain"]), parse_module(doc["codomain"]),
                          [_ints(r) for r in doc["matrix"]])


def hyperbolic_doc(h: HyperbolicMorphism) -> dict:
    return {"e": list(h.e), "f": list(h.f)}


def parse_hyperbolic(doc: dict) -> HyperbolicMorphism:
    return HyperbolicMorphism(tuple(_ints(doc["e"])), tuple(_ints(doc["f"])))


# -- complexes ------------------------------------------------------------


def _label(v):
    return list(_label(w) for w in v) if isinstance(v, tuple) else v


def complex_doc(K: SimplicialComplex) -> dict:
    return {"type": "complex", "vertices": [_label(v) for v in K.vertices],
            "maximal_simplices": [[_label(v) for v in s] for s in sorted(K.facets)]}


def parse_complex(doc: dict) -> SimplicialComplex:
    _need(doc, "complex")
    from .scomplex import closure
    verts = [_vertex(v) for v in doc.get("vertices", [])]
    facets = [[_vertex(v) for v in s] for s in doc.get("maximal_simplices", [])]
    K = closure(facets + [[v] for v in verts])
    used = {v for s in facets for v in s}
    if not used <= set(verts) and verts:
        raise DocumentError("maximal simplices use undeclared vertices")
    return K


def map_doc(f: SimplicialMap) -> dict:
    return {"type": "simplicial_map", "domain": complex_doc(f.domain), "codomain": complex_doc(f.codomain),
            "assignment": [[_label(v), _label(f.assignment[v])] for v in f.domain.vertices]}


def parse_map(doc: dict) -> SimplicialMap:
    _need(doc, "simplicial_map")
    assignment = {_vertex(a): _vertex(b) for a, b in doc["assignment"]}
    return SimplicialMap(parse_complex(doc["domain"]), parse_complex(doc["codomain"]), assignment)


def semisimplicial_doc(X) -> dict:
    base = X.base if isinstance(X, AugmentedSemiSimplicialSet) else X
    doc = {"type": "semisimplicial_set", "levels": [[_label(v) for v in lv] for lv in base.levels],
           "faces": [[list(d) for d in table] for table in base.faces]}
    if isinstance(X, AugmentedSemiSimplicialSet):
        doc["augmentation_level"] = [_label(v) for v in X.augmentation_level]
        doc["augmentation"] = list(X.augmentation)
    return doc


def parse_semisimplicial(doc: dict):
    _need(doc, "semisimplicial_set")
    levels = tuple(tuple(_vertex(v) for v in lv) for lv in doc["levels"])
    faces = tuple(tuple(tuple(_ints(d)) for d in table) for table in doc["faces"])
    base = SemiSimplicialSet(levels, faces)
    if "augmentation" in doc:
        return AugmentedSemiSimplicialSet(base, tuple(_vertex(v) for v in doc["augmentation_level"]),
                                          tuple(_ints(doc["augmentation"])))
    return base


def chain_complex_doc(C: ChainComplex) -> dict:
    return {"type": "chain_complex", "ranks": [[k, r] for k, r in sorted(C.ranks.items())],
            "boundaries": [[k, [[[i, v] for i, v in sorted(col.items())] for col in cols]]
                           for k, cols in sorted(C.boundaries.items())]}


def parse_chain_complex(doc: dict) -> ChainComplex:
    _need(doc, "chain_complex")
    ranks = {as_int(k): as_int(r) for k, r in doc["ranks"]}
    bnd = {as_int(k): [{as_int(i): as_int(v) for i, v in col} for col in cols] for k, cols in doc["boundaries"]}
    return ChainComplex(ranks, bnd)


def homology_doc(H: HomologyProfile) -> dict:
    return {"type": "homology",
            "groups": [{"degree": k, "betti": b, "torsion": list(t)} for k, b, t in H.groups]}


def parse_homology(doc: dict) -> HomologyProfile:
    _need(doc, "homology")
    return HomologyProfile(tuple((as_int(g["degree"]), as_int(g["betti"]), tuple(_ints(g["torsion"])))
                                 for g in doc["groups"]))


PARSERS = {
    "quadratic_module": parse_module,
    "morphism": parse_morphism,
    "complex": parse_complex,
    "simplicial_map": parse_map,
    "semisimplicial_set": parse_semisimplicial,
    "chain_complex": parse_chain_complex,
    "homology": parse_homology,
}

PRINTERS = {
    QuadraticModule: module_doc,
    ModuleMorphism: morphism_doc,
    SimplicialComplex: complex_doc,
    SimplicialMap: map_doc,
    SemiSimplicialSet: semisimplicial_doc,
    AugmentedSemiSimplicialSet: semisimplicial_doc,
    ChainComplex: chain_complex_doc,
    HomologyProfile: homology_doc,
}


def parse(doc: dict):
    kind = doc.get("type") if isinstance(doc, dict) else None
    if kind not in PARSERS:
        raise DocumentError(f"unknown document type {kind!r}")
    return PARSERS[kind](doc)


def to_doc(obj) -> dict:
    for cls, printer in PRINTERS.items():
        if type(obj) is cls:
            return printer(obj)
    raise DocumentError(f"no document format for {type(obj).__name__}")

