"""Exact computations with equivariant line bundles on the semistable model
of the p-adic half-plane, their mod-p cohomology on truncated special fibers,
and the induced Hecke-module structures."""

from .arith import FiniteField, GaloisRing, Mat2, smith_valuations
from .bundles import (BundleClass, Character, GeneratorWord,
                      closed_form_orders, generator_word, legendre_character,
                      solve_order_systems, trivial_character)
from .cartier import (CartierPoint, classify_deformations,
                      deformation_lie_scalar, lie_map_scalars, vanishing_scan)
from .heckerep import (HeckeOp, InducedElement, SupersingularParams,
                       WeightSigma, act, convolve, delta_element,
                       enumerate_and_match, hecke_phi, jordan_holder_check,
                       phi_tilde, supersingular_quotient_dim, t_apply)
from .specialfiber import (CohomologyResult, GluingComplex, cohomology,
                           dense_cohomology, eval_kernel_basis,
                           predicted_dims, restriction_image_dim)
from .tree import Ball, Tree, Vertex

__all__ = [
    "FiniteField", "GaloisRing", "Mat2", "smith_valuations",
    "BundleClass", "Character", "GeneratorWord", "closed_form_orders",
    "generator_word", "legendre_character", "solve_order_systems",
    "trivial_character",
    "CartierPoint", "classify_deformations", "deformation_lie_scalar",
    "lie_map_scalars", "vanishing_scan",
    "HeckeOp", "InducedElement", "SupersingularParams", "WeightSigma",
    "act", "convolve", "delta_element", "enumerate_and_match", "hecke_phi",
    "jordan_holder_check", "phi_tilde", "supersingular_quotient_dim",
    "t_apply",
    "CohomologyResult", "GluingComplex", "cohomology", "dense_cohomology",
    "eval_kernel_basis", "predicted_dims", "restriction_image_dim",
    "Ball", "Tree", "Vertex",
]

__version__ = "0.1.0"
