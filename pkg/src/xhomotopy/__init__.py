"""Finite simplicial complexes and graphs: functors, x-homotopy, strong
collapses, homology and model-structure certificates."""

from ._util import DEFAULT_BUDGET, Budget, BudgetExceeded
from .complexes import (
    Complex,
    OrderedComplex,
    VertexMap,
    boundary,
    coproduct,
    cycle_complex,
    delta,
    empty_complex,
    exponential,
    horn,
    is_flag,
    make_complex,
    path_complex,
    point,
    product,
    pushout_mono,
)
from .graphs import Graph, clique_complex, exponential_loop, exponential_reflexive, hom_complex, skeleton1
from .homology import homology, is_homology_iso
from .homotopy import find_deformation_retract, x_homotopic
from .collapse import collapses_to, core, ndr_witness, verify_ndr
from .isomorphism import isomorphic
from .subdivision import last_vertex_map, sd, sd2
from .cells import gen_cofibration, gen_trivial_cofibration, is_trivial_fibration_up_to, solve_lifting

__version__ = "0.1.0"
