"""Exact Chevalley groups over finite rings and their conjugation-invariant
word norms: SL_n and Sp4 matrix realizations, level ideals, normal-generation
criteria, and the lower-bound generating-set constructions, all verifiable by
brute force at desk scale."""

from .rings import (
    ZMod,
    QuadQuot,
    Product,
    make_ring,
    parse_ring,
    try_invert,
    ideal_from_generators,
    ideal_is_full,
    maximal_ideals,
    radical_contains,
    local_factors,
    split_two_quadratic,
    SplitKind,
)
from .roots import root_system, positive_roots, pairing, reflect, commutator_support
from .groups import (
    SL,
    SP4,
    enumerate_group,
    root_matrix,
    weyl_matrix,
    torus_matrix,
    is_member,
    reduce_mod,
    resolve_signs,
    sl2_unitriangular_decompose,
)
from .levels import level_ideal, level_ideal_power, pi_set, levels_sum_is_full, pi_lower_bound_certificate
from .norms import (
    INFINITY,
    ball,
    conjugacy_closure,
    delta_k_exact,
    diameter,
    epsilon_set,
    normal_closure,
    word_norm,
)
from .constructions import (
    abelianization_dim,
    check_unit_normal_generation,
    f2r_epimorphism,
    generation_criteria_check,
    lower_bound_set_higher_rank,
    lower_bound_set_rank2,
    sp4_sign_epimorphism,
    split_data,
)

__all__ = [
    "ZMod", "QuadQuot", "Product", "make_ring", "parse_ring", "try_invert",
    "ideal_from_generators", "ideal_is_full", "maximal_ideals",
    "radical_contains", "local_factors", "split_two_quadratic", "SplitKind",
    "root_system", "positive_roots", "pairing", "reflect", "commutator_support",
    "SL", "SP4", "enumerate_group", "root_matrix", "weyl_matrix",
    "torus_matrix", "is_member", "reduce_mod", "resolve_signs",
    "sl2_unitriangular_decompose",
    "level_ideal", "level_ideal_power", "pi_set", "levels_sum_is_full",
    "pi_lower_bound_certificate",
    "INFINITY", "ball", "conjugacy_closure", "delta_k_exact", "diameter",
    "epsilon_set", "normal_closure", "word_norm",
    "abelianization_dim", "check_unit_normal_generation", "f2r_epimorphism",
    "generation_criteria_check", "lower_bound_set_higher_rank",
    "lower_bound_set_rank2", "sp4_sign_epimorphism", "split_data",
]

__version__ = "0.1.0"
