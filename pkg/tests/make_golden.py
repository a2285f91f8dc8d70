"""Write the input documents in tests/golden/ (python tests/make_golden.py).

Expected outputs are pinned separately in test_cli.py so that regenerating
inputs never silently rewrites an expectation.
"""

import pathlib

from hstab import forms
from hstab.documents import (chain_complex_doc, complex_doc, dumps, map_doc, module_doc, morphism_doc,
                             semisimplicial_doc)
from hstab.forms import FormParameter, Lam, ModuleMorphism
from hstab.scomplex import (AugmentedSemiSimplicialSet, SimplicialMap, closure, injective_words, octahedron,
                            rp2_six_vertex, simplicial_chain_complex)

OUT = pathlib.Path(__file__).parent / "golden"
EVEN = FormParameter(-1, Lam.EVEN)


def repair_problem():
    tris = [(0, 1, 4), (1, 4, 5), (1, 2, 5), (2, 3, 5), (3, 4, 5), (0, 3, 4)]
    bnd = closure([[0, 1], [1, 2], [2, 3], [0, 3]])
    bmap = [[0, 0], [1, 2], [2, 1], [3, 3]]
    return {"type": "repair_problem", "n": 2, "disk": complex_doc(closure(tris)), "boundary": complex_doc(bnd),
            "target": complex_doc(octahedron()), "boundary_map": bmap,
            "initial": bmap + [[4, 4], [5, 4]]}


def main():
    H2 = forms.hyperbolic(2, EVEN)
    K = closure([[0, 1, 2]])
    docs = {
        "octahedron.json": complex_doc(octahedron()),
        "rp2.json": complex_doc(rp2_six_vertex()),
        "circle.json": complex_doc(closure([[0, 1], [1, 2], [0, 2]])),
        "hyperbolic2.json": module_doc(H2),
        "bad_alpha_morphism.json": morphism_doc(ModuleMorphism(forms.hyperbolic(1, EVEN), forms.hyperbolic(1, EVEN),
                                                                [[1, 1], [0, 1]])),
        "fold_map.json": map_doc(SimplicialMap(K, closure([[0, 1]]), {0: 0, 1: 1, 2: 1})),
        "injective_words_2.json": semisimplicial_doc(AugmentedSemiSimplicialSet.over_point(injective_words(2))),
        "circle_chains.json": chain_complex_doc(simplicial_chain_complex(closure([[0, 1], [1, 2], [0, 2]]))),
        "repair_square.json": repair_problem(),
    }
    for name, doc in docs.items():
        (OUT / name).write_text(dumps(doc) + "\n")
        print(name)


if __name__ == "__main__":
    main()
