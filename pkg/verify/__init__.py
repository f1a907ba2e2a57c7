from verify.chernoff import TailCheck, chernoff_lower_tail, empirical_lower_tail
from verify.construction import (
    EdgeCheck,
    G0Construction,
    check_edges,
    construct_g0,
    edge_threshold,
    g0_seed,
)
from verify.star import (
    StarMode,
    StarUnionBound,
    StarVerdict,
    ell_sets,
    exceeds_threshold,
    star_pair_count,
    star_threshold,
    star_union_bound,
    verify_star,
)

__all__ = [
    "EdgeCheck",
    "G0Construction",
    "StarMode",
    "StarUnionBound",
    "StarVerdict",
    "TailCheck",
    "check_edges",
    "chernoff_lower_tail",
    "construct_g0",
    "edge_threshold",
    "ell_sets",
    "empirical_lower_tail",
    "exceeds_threshold",
    "g0_seed",
    "star_pair_count",
    "star_threshold",
    "star_union_bound",
    "verify_star",
]
