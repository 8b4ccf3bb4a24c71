"""Agrarian invariants of group presentations.

Exact Betti numbers, torsion and polytopes of presentation complexes with
respect to agrarian maps, and the deficiency-one marked polytope pipeline.
"""

from .complexes import ChainComplex, ChainMap, presentation_complex, specialize
from .fields import QQ, FieldAutomorphism, RationalFunctionField
from .invariants import betti_numbers, chain_contraction, same_class, torsion, torsion_normal_form
from .linalg import Matrix, dieudonne_det_canonical
from .pipeline import bns_query, run_pipeline, torsion_polytope
from .polytopes import IntegralPolytope, MarkedPolytope, PolytopeDifference, convex_hull
from .presentations import Presentation, format_presentation, parse_presentation
from .skew import OreField, SkewLaurentRing
from .twisted import AgrarianMap, LatticeGroup, TwistDescriptor

__version__ = "0.1.0"

__all__ = [
    "AgrarianMap",
    "ChainComplex",
    "ChainMap",
    "FieldAutomorphism",
    "IntegralPolytope",
    "LatticeGroup",
    "MarkedPolytope",
    "Matrix",
    "OreField",
    "PolytopeDifference",
    "Presentation",
    "QQ",
    "RationalFunctionField",
    "SkewLaurentRing",
    "TwistDescriptor",
    "betti_numbers",
    "bns_query",
    "chain_contraction",
    "convex_hull",
    "dieudonne_det_canonical",
    "format_presentation",
    "parse_presentation",
    "presentation_complex",
    "run_pipeline",
    "same_class",
    "specialize",
    "torsion",
    "torsion_normal_form",
    "torsion_polytope",
]
