"""Exact computations with 3-Lie algebras and their operators."""
from .exactlin import Matrix, SingularMatrixError, rank, rat
from .families import FAMILIES, LAURENT, OMEGA, Window, check_reynolds_sampled, materialize_window
from .nsnr import (NSThreeLie, check_nijenhuis, check_ns_axioms, check_reynolds,
                   derivation_from_reynolds, ns_from_nijenhuis, ns_from_trbo,
                   reynolds_from_derivation, subadjacent)
from .repcoh import (NCochain, Representation, TwoCochain, adjoint, check_2cocycle,
                     check_representation, coboundary, cohomology_dims, twisted_semidirect)
from .report import IdentityViolation, Report, TrilieError, UnverifiedInputError
from .threelie import ThreeLieAlgebra, check_fundamental_identity, verify
from .trbo import (TwistedRBO, check_deformation, check_deformation_equivalence,
                   check_twisted_rbo, graph_closure_check, induced_bracket, make_context,
                   trbo_cohomology_dims, trbo_from_inverse)

__version__ = "0.1.0"

__all__ = [
    "Matrix", "SingularMatrixError", "rank", "rat",
    "FAMILIES", "LAURENT", "OMEGA", "Window", "check_reynolds_sampled", "materialize_window",
    "NSThreeLie", "check_nijenhuis", "check_ns_axioms", "check_reynolds",
    "derivation_from_reynolds", "ns_from_nijenhuis", "ns_from_trbo",
    "reynolds_from_derivation", "subadjacent",
    "NCochain", "Representation", "TwoCochain", "adjoint", "check_2cocycle",
    "check_representation", "coboundary", "cohomology_dims", "twisted_semidirect",
    "IdentityViolation", "Report", "TrilieError", "UnverifiedInputError",
    "ThreeLieAlgebra", "check_fundamental_identity", "verify",
    "TwistedRBO", "check_deformation", "check_deformation_equivalence", "check_twisted_rbo",
    "graph_closure_check", "induced_bracket", "make_context", "trbo_cohomology_dims",
    "trbo_from_inverse",
]
