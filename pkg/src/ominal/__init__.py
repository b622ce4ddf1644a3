"""Exact cohomology of semilinear sets: cells and their contractions, shrink
covers, sheaf and nerve cohomology, an independent triangulation oracle and
one-dimensional type spaces."""

from .geometry import AffineForm, ConstraintSystem, LinearConstraint, UnboundedInput
from .semilinear import DefinableFamily, DimensionMismatch, SemilinearSet
from .cells import Cell, PLFunction, PLMap, contraction, decompose, verify_partition
from .homology import (
    CoefficientGroup,
    CohomologyGroup,
    SimplicialComplex,
    Z,
    Z2,
    cohomology,
    simplicial_cohomology,
    sphere_cohomology,
)
from .oracle import oracle_cohomology, triangulate
from .shrink import (
    check_iso_pair,
    check_shrink_laws,
    cube_face_cover,
    shrink_family,
    stabilization_t0,
)
from .typespace import NamedType1D, enumerate_named_types, finite_subcover, separate_closed
from .dsl import ParseError, parse

__version__ = "0.1.0"

__all__ = [
    "AffineForm", "ConstraintSystem", "LinearConstraint", "UnboundedInput",
    "DefinableFamily", "DimensionMismatch", "SemilinearSet",
    "Cell", "PLFunction", "PLMap", "contraction", "decompose", "verify_partition",
    "CoefficientGroup", "CohomologyGroup", "SimplicialComplex", "Z", "Z2", "cohomology",
    "simplicial_cohomology", "sphere_cohomology",
    "oracle_cohomology", "triangulate",
    "check_iso_pair", "check_shrink_laws", "cube_face_cover", "shrink_family",
    "stabilization_t0",
    "NamedType1D", "enumerate_named_types", "finite_subcover", "separate_closed",
    "ParseError", "parse",
]
