"""Canonical extensions of finite bounded lattices.

Three independent constructions are provided and cross-checked:
maximal E-preserving maps over the maximal-partial-homomorphism dual,
the same over the enlarged special-partial-homomorphism dual, and the
Galois-stable sets of the filter/ideal polarity.
"""

from .ah import (
    LGraphMorphism,
    build_Dbar,
    canonical_extension_ah,
    check_iso_XY,
    dbar_on_hom,
    enumerate_sph,
    evaluation_bar,
    gbar_on_morphism,
    lift_hom,
    psi,
    restrict_to_mph,
)
from .corpus import boolean, chain, corpus, homomorphisms, m3, n5, product, random_lattice, standard_corpus
from .errors import CanextError
from .graph import (
    Graph,
    check_lgraph_morphism,
    ell,
    graph_from_edges,
    is_ell_stable,
    is_r_stable,
    lambda_op,
    r,
    rho_op,
    witness_E_from_quasiorders,
)
from .lattice import Lattice, LatticeHom, build_lattice, is_distributive, validate_hom
from .mpe import (
    CompleteHom,
    Completion,
    MpeMap,
    check_compactness,
    check_density,
    enumerate_mpe,
    extend_partial,
    filter_elements,
    ideal_elements,
    mpe_join,
    mpe_meet,
)
from .oracle import PolarityContext, brute_force_mpe, gh_extension, iso_fixing_L
from .partial import PartialHom
from .ploscica import build_D, canonical_extension_ploscica, enumerate_mph, evaluation, reproduce_fig3
from .report import Report

__version__ = "0.1.0"
