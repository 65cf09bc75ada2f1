"""Exact chain-level strong homology of maps.

Integer linear algebra (Smith and Hermite forms, finitely generated abelian
groups), chain complexes with mapping cones and coherent morphisms, finite
towers with their shift-difference cones, lim / lim^1 of group towers with
the Milnor sequence, and simplicial models.  Everything is exact.
"""

__version__ = "0.1.0"

from .algebra import FgAbGroup, Homomorphism, smith_normal_form
from .chain import (ChainComplex, ChainHomotopy, ChainMap, CoherentChainHomotopy, CoherentChainMorphism,
                    MappingCone, cone_functor_homotopy, cone_functor_map, homology, induced_on_homology)
from .errors import (CertificateFailure, NonStabilizing, ParseError, StrongHomError, TowerTooShort,
                     ValidationError)
from .exact import LongExactSequence
from .kernels import BACKEND
from .limits import GroupTower, inverse_limit, lim1_verdict, milnor_naturality, milnor_report
from .matrix import IntMatrix
from .simplicial import (SimplicialComplex, SimplicialMap, axiom1_crosscheck, circle, simplicial_mapping_cone,
                         solenoid_tower)
from .tower import (MapTower, Tower, TowerMorphism, induced_morphism, long_exact_sequence,
                    pair_shift_difference, product_complex, shift_difference, sigma_partial_ses,
                    strong_homology)

__all__ = [
    "BACKEND", "CertificateFailure", "ChainComplex", "ChainHomotopy", "ChainMap", "CoherentChainHomotopy",
    "CoherentChainMorphism", "FgAbGroup", "GroupTower", "Homomorphism", "IntMatrix", "LongExactSequence",
    "MapTower", "MappingCone", "NonStabilizing", "ParseError", "SimplicialComplex", "SimplicialMap",
    "StrongHomError", "Tower", "TowerMorphism", "TowerTooShort", "ValidationError", "axiom1_crosscheck",
    "circle", "cone_functor_homotopy", "cone_functor_map", "homology", "induced_morphism",
    "induced_on_homology", "inverse_limit", "lim1_verdict", "long_exact_sequence", "milnor_naturality",
    "milnor_report", "pair_shift_difference", "product_complex", "shift_difference",
    "sigma_partial_ses", "simplicial_mapping_cone", "smith_normal_form", "solenoid_tower",
    "strong_homology",
]
