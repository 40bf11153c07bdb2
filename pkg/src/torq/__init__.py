"""Exact toric combinatorics of quotient presentations.

Fans, Weil divisors and class groups, triangles ``M -> Mhat -> Z^rays`` and
the quotient presentations they define, homogeneous coordinate rings at the
monomial level, and section spaces of divisorial sheaves. All arithmetic is
over Python integers and fractions.
"""
from .coordring import (GradedCoordinateRing, MonomialIdeal, irrelevant_generators,
                        irrelevant_membership, is_saturated, saturated_covering, section_monoid,
                        veronese_degrees, weight_divisor, weight_module_member)
from .divisor import (CartierData, ClassGroup, WeilDivisor, cartier_subgroup, class_group,
                      div_char, effective_with_support, is_ample, is_cartier, is_qcartier)
from .errors import FanError, PreconditionError, TorqError, TriangleError
from .fan import Fan, FanMap, face_fan, new_fan, new_fan_map
from .polyhedral import Cone, dual_cone, hilbert_basis, lattice_points, strict_sign_solution
from .presentation import (QuotientPresentation, Triangle, WeightGroup, ample_triangle,
                           build_presentation, canonical_triangle, cartierization,
                           check_presentation, classify, cox_triangle, kajiwara_triangle,
                           new_triangle, pushforward, snake_class, strict_transform,
                           weight_group)
from .sheafcalc import (SectionSpace, gamma_star_piece, sections_basis, vanishing_crosscheck,
                        vanishing_test)
from .zlinalg import (AbelianGroupPresentation, IntMatrix, QuotientGroup, cokernel,
                      hermite_normal_form, kernel_basis, smith_normal_form)

__version__ = "0.1.0"

__all__ = [
    "GradedCoordinateRing", "MonomialIdeal", "irrelevant_generators", "irrelevant_membership",
    "is_saturated", "saturated_covering", "section_monoid", "veronese_degrees",
    "weight_divisor", "weight_module_member", "CartierData", "ClassGroup", "WeilDivisor",
    "cartier_subgroup", "class_group", "div_char", "effective_with_support", "is_ample",
    "is_cartier", "is_qcartier", "FanError", "PreconditionError", "TorqError", "TriangleError",
    "Fan", "FanMap", "face_fan", "new_fan", "new_fan_map", "Cone", "dual_cone",
    "hilbert_basis", "lattice_points", "strict_sign_solution", "QuotientPresentation",
    "Triangle", "WeightGroup", "ample_triangle", "build_presentation", "canonical_triangle",
    "cartierization", "check_presentation", "classify", "cox_triangle", "kajiwara_triangle",
    "new_triangle", "pushforward", "snake_class", "strict_transform", "weight_group",
    "SectionSpace", "gamma_star_piece", "sections_basis", "vanishing_crosscheck",
    "vanishing_test", "AbelianGroupPresentation", "IntMatrix", "QuotientGroup", "cokernel",
    "hermite_normal_form", "kernel_basis", "smith_normal_form",
]
