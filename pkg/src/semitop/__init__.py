"""Semigroup actions on 2-complexes: Green's relations, Schutzenberger groups,
fundamental groups of action complexes and growth."""

__version__ = "0.1.0"

from .words import MONOID, SEMIGROUP, Presentation, PresentationError, parse_presentation
from .semigroup import Semigroup, enumerate_semigroup, parse_rees, parse_transformations
from .green import green_relations, schutzenberger_group
from .action import PartialAction, automorphism_group, quotient_action, validate_action
from .complex import TwoComplex, build_action_complex, verify_quotient_isomorphism
from .fundamental import (HypothesisNotMet, check_stabilizer_condition, pi1_presentation,
                          reidemeister_subgroup_presentation, schutzenberger_presentation)
from .growth import estimate_degree, graph_growth, semigroup_growth

__all__ = [
    "MONOID", "SEMIGROUP", "Presentation", "PresentationError", "parse_presentation",
    "Semigroup", "enumerate_semigroup", "parse_rees", "parse_transformations",
    "green_relations", "schutzenberger_group",
    "PartialAction", "automorphism_group", "quotient_action", "validate_action",
    "TwoComplex", "build_action_complex", "verify_quotient_isomorphism",
    "HypothesisNotMet", "check_stabilizer_condition", "pi1_presentation",
    "reidemeister_subgroup_presentation", "schutzenberger_presentation",
    "estimate_degree", "graph_growth", "semigroup_growth",
]
