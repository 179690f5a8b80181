"""Edge rings of graphs: toric ideals, initial complexes, h-vectors and
canonical modules, with independent cross-checks for every h-vector."""

from edgering.errors import (
    EdgeRingError,
    InputError,
    InvariantViolation,
    ResourceGuardError,
)
from edgering.graph_core import Graph, GnLabels, build_family
from edgering.toric_ideal import Binomial, gn_generators, toric_generators
from edgering.groebner import MonomialOrder, buchberger, initial_ideal
from edgering.stanley_reisner import SimplicialComplex
from edgering.hilbert_semigroup import closed_form_h, h_polynomial_pipeline
from edgering.cone_canonical import canonical_generators, e_tilde, verdicts

__all__ = [
    "EdgeRingError",
    "InputError",
    "InvariantViolation",
    "ResourceGuardError",
    "Graph",
    "GnLabels",
    "build_family",
    "Binomial",
    "gn_generators",
    "toric_generators",
    "MonomialOrder",
    "buchberger",
    "initial_ideal",
    "SimplicialComplex",
    "closed_form_h",
    "h_polynomial_pipeline",
    "canonical_generators",
    "e_tilde",
    "verdicts",
]

__version__ = "0.1.0"
