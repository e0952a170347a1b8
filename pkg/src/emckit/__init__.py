"""Exact search and verification tools for the Erdős Matching Conjecture at small n."""

from emckit.combinatorics import (
    MAX_N,
    binomial,
    colex_rank,
    colex_unrank,
    elements,
    enumerate_ksets,
    kset,
)
from emckit.family import (
    Family,
    complement,
    count_disjoint_pairs,
    degree,
    degree_profile,
    has_matching_of_size,
    matching_number,
    restrict,
)
from emckit.constructions import construct_A, construct_B, kleitman_extremal, star
from emckit.shifting import (
    is_left_compressed,
    left_compress,
    shift_family,
    verify_shiftdeg_a,
    verify_shiftdeg_b,
)
from emckit.partitions import (
    BoundParams,
    count_M,
    count_M_prime,
    count_partitions,
    enumerate_partitions,
    epsilon_formulas,
    stab_upper_bound,
    supersat_lower_bound,
    verify_double_count,
)
from emckit.solver import (
    Objective,
    Problem,
    SolverResult,
    drop_ratio_check,
    enumerate_optima,
    kleitman_check,
    solve_max_family,
    solve_min_disjoint_pairs,
)
from emckit.lp import export_lp

__all__ = [
    "MAX_N",
    "binomial",
    "colex_rank",
    "colex_unrank",
    "elements",
    "enumerate_ksets",
    "kset",
    "Family",
    "complement",
    "count_disjoint_pairs",
    "degree",
    "degree_profile",
    "has_matching_of_size",
    "matching_number",
    "restrict",
    "construct_A",
    "construct_B",
    "kleitman_extremal",
    "star",
    "is_left_compressed",
    "left_compress",
    "shift_family",
    "verify_shiftdeg_a",
    "verify_shiftdeg_b",
    "BoundParams",
    "count_M",
    "count_M_prime",
    "count_partitions",
    "enumerate_partitions",
    "epsilon_formulas",
    "stab_upper_bound",
    "supersat_lower_bound",
    "verify_double_count",
    "Objective",
    "Problem",
    "SolverResult",
    "drop_ratio_check",
    "enumerate_optima",
    "kleitman_check",
    "solve_max_family",
    "solve_min_disjoint_pairs",
    "export_lp",
]

__version__ = "0.1.0"
