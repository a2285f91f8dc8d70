import json
import pathlib

import pytest

from hstab import forms, kcomplex
from hstab.forms import FormParameter, Lam
from hstab.scomplex import SimplicialComplex
from oracles import ka_vertices

FIXTURE = json.loads((pathlib.Path(__file__).parent / "fixtures" / "ka_counts.json").read_text())
PARAMS = {"2Z": FormParameter(-1, Lam.EVEN), "Z": FormParameter(-1, Lam.FULL)}


@pytest.mark.parametrize("row", FIXTURE, ids=lambda r: f"g{r['g']}-{r['lambda']}-b{r['bound']}")
def test_f_vector_matches_exhaustive_fixture(row):
    T = kcomplex.build_ka(forms.hyperbolic(row["g"], PARAMS[row["lambda"]]), row["bound"])
    assert list(T.complex.f_vector()) == row["f_vector"]


def test_vertices_match_live_scan():
    T = kcomplex.build_ka(forms.hyperbolic(1, PARAMS["Z"]), 2)
    assert [(v.e, v.f) for v in T.vertices] == ka_vertices(1, 1, 2)


def test_vertices_are_hyperbolic_and_edges_orthogonal():
    M = forms.hyperbolic(2, PARAMS["2Z"])
    T = kcomplex.build_ka(M, 1)
    assert all(forms.is_hyperbolic_morphism(M, v) for v in T.vertices)
    assert all(forms.are_orthogonal(M, u, v) for u, v in T.edges)
    assert T.is_simplex(T.edges[0]) and not T.is_simplex((T.vertices[0], T.vertices[0]))


def test_max_dim_truncates():
    T = kcomplex.build_ka(forms.hyperbolic(2, PARAMS["2Z"]), 1, max_dim=0)
    assert T.complex.dim == 0


def test_link_equals_literal_link():
    from hstab.scomplex import link
    T = kcomplex.build_ka(forms.hyperbolic(2, PARAMS["2Z"]), 1)
    v = T.vertices[0]
    assert T.link((v,)).simplices == link(T.complex, (v,)).simplices


def test_link_restriction_lands_in_complement_truncation():
    M = forms.hyperbolic(2, PARAMS["2Z"])
    T = kcomplex.build_ka(M, 1)
    sigma = (forms.standard_copy(2, 0),)
    R = kcomplex.link_restriction(T, sigma)
    assert R.complement.rank == 2
    assert forms.is_nondegenerate(R.complement)
    for v, w in R.map.assignment.items():
        assert forms.is_hyperbolic_morphism(R.complement, w)


def test_bound_monotonicity_on_two_copies():
    M = forms.hyperbolic(2, PARAMS["2Z"])
    small, big = kcomplex.build_ka(M, 1), kcomplex.build_ka(M, 2)
    assert set(small.vertices) <= set(big.vertices)
    assert small.complex.simplices == big.complex.full_subcomplex(small.vertices).simplices


def test_degenerate_module_rejected():
    M = forms.QuadraticModule(PARAMS["2Z"], [[0, 0], [0, 0]], [0, 0])
    with pytest.raises(forms.FormsError):
        kcomplex.build_ka(M, 1)


def test_relabelled_complex_is_simplicial():
    T = kcomplex.build_ka(forms.hyperbolic(1, PARAMS["2Z"]), 1)
    assert isinstance(T.complex, SimplicialComplex) and T.complex.f_vector() == (4,)
