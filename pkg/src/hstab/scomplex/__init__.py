from .complex import (ComplexError, SimplicialComplex, SimplicialMap, boundary_of_simplex, closure, cone,
                      disjoint_union, join, link, octahedron, rp2_six_vertex, simplex, star, zero_sphere)
from .homology import (ChainComplex, ChainError, HomologyProfile, augmented_chain_complex, homology,
                       semisimplicial_chain_complex, simplicial_chain_complex, simplicial_homology)
from .semisimplicial import (AugmentedSemiSimplicialSet, SemiSimplicialSet, associated_semisimplicial,
                             injective_words, ordered_simplex)
from .snf import SmithDecomposition, elementary_divisors, smith_normal_form, snf_diagonal
from .connectivity import ConnectivityReport, Verdict, WcmResult, connectivity_report, wcm_check
from .injectivity import criteria_report, simplexwise_injective
