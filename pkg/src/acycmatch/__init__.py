"""Matchings, acyclic matchings and matched subspaces in abelian groups and finite fields."""

from ._accel import BACKEND
from .errors import (AcycMatchError, ArgumentError, DomainError, PreconditionError, ResourceError,
                     StructuralError)
from .ffield import FieldElement, FieldSpec, default_modulus, degree_stats, field_mul_inv
from .groups import GroupElement, GroupSpec, Subset, cyclic_generator_stats, enumerate_subsets, sumset
from .harness import RunConfig, TableRow, emit_report, reproduce_table, run_search
from .linear import (FamilyBoundReport, LinearIso, MatchedReason, OrderedBasis, basis_matched_check,
                     construct_matched_basis, dimension_criterion, extend_family_exact, free_transversal,
                     inv_translate_intersect, linear_acyclic_tiny, matched_sufficient,
                     primitive_dimension_search, strong_matching_exists, stabiliser_bound_check, weak_local_match)
from .matching import (MatchingFn, MultiplicityFunction, acyclic_matchings, enumerate_matchings,
                       group_Ab_bound_check, hall_bound, has_acyclic_matching, has_matching, is_matching,
                       multiplicity_function, polyadic_matching_check, weak_m_intersection_check)
from .poly import MatchingMatrix, Polynomial, build_group_matrix, build_linear_matrix, determinant
from .search import SearchReport, Witness, acyclic_property_search, weak_acyclic_search
from .subspace import Subspace, enumerate_subspaces, gaussian_binomial, intersect, is_primitive, subfield_fixed

__version__ = "0.1.0"
