"""Polynomial digit systems: exact arithmetic, CNS decisions, CRT merging and
simultaneous expansions."""

__version__ = "0.1.0"

from .intpoly import IntPoly, PolyParseError, parse_poly, resultant, is_expanding, coprime_over_Q
from .quotient import DigitSystem, Expansion, QuotientRing, expand, backstep, digit_check
from .gb_ideal import StrongGB, FiniteQuotient, strong_gb, normal_form, period_S
from .crt_merge import NotIntegral, MergeReport, psi, psi_inverse, in_W, merge_digit_systems, necessary_conditions
from .cns import WitnessReport, decide_fep, is_cns, kovacs_sufficient, witness_closure
from .simultaneous import (
    SimSystem,
    sim_step,
    sim_expand,
    verify_sim,
    corsim_classify,
    quad_triple,
    clique_search,
    pairwise_resultants,
)

__all__ = [
    "IntPoly", "PolyParseError", "parse_poly", "resultant", "is_expanding", "coprime_over_Q",
    "DigitSystem", "Expansion", "QuotientRing", "expand", "backstep", "digit_check",
    "StrongGB", "FiniteQuotient", "strong_gb", "normal_form", "period_S",
    "NotIntegral", "MergeReport", "psi", "psi_inverse", "in_W", "merge_digit_systems", "necessary_conditions",
    "WitnessReport", "decide_fep", "is_cns", "kovacs_sufficient", "witness_closure",
    "SimSystem", "sim_step", "sim_expand", "verify_sim", "corsim_classify", "quad_triple",
    "clique_search", "pairwise_resultants",
]
