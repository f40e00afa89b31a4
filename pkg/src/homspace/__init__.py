"""Virtual Poincare polynomials of homogeneous spaces and their regular embeddings."""

from .exactalg import IntPoly, RatFunc
from .homogeneous import (DisconnectedSubgroup, GroupSpec, HomogeneousPair, half_poincare,
                          point_count, q_poly, verify_theorem1, z_poincare)
from .grammar import parse_group_spec
from .weylcore import ReductiveType, SimpleType, f_series, flag_poly, molien_series, weyl_enumerate

__version__ = "0.1.0"

__all__ = [
    "IntPoly", "RatFunc", "DisconnectedSubgroup", "GroupSpec", "HomogeneousPair",
    "half_poincare", "point_count", "q_poly", "verify_theorem1", "z_poincare",
    "parse_group_spec", "ReductiveType", "SimpleType", "f_series", "flag_poly",
    "molien_series", "weyl_enumerate",
]
