"""Certified full-rank decisions for mapping tori Z^n x|_A Z."""

__version__ = "0.1.0"

from .decide import Decision, Verdict, criterion_gcd, cyclic_search, decide_full_rank
from .exactmat import Mat
from .oracle import brute_min_upper, is_generating, orbit_subgroup_basis
from .reduce import TypeTag, UnimodChain, choose_k, classify, to_type_h, to_type_hn
from .witness import OrbitSet, WitnessTrace, build_orbit_witness, full_pipeline_witness, select_st

__all__ = [
    "Mat", "Decision", "Verdict", "OrbitSet", "WitnessTrace", "TypeTag", "UnimodChain",
    "decide_full_rank", "criterion_gcd", "cyclic_search",
    "classify", "to_type_h", "to_type_hn", "choose_k",
    "select_st", "build_orbit_witness", "full_pipeline_witness",
    "orbit_subgroup_basis", "is_generating", "brute_min_upper",
]
