from .density import check_complement_inequality, is_balanced, max_subgraph_density
from .search import (
    automorphism_count,
    automorphism_count_by_permutations,
    check_motif_regime,
    find_balanced_motif,
    ratio_interval,
    simplest_fraction_between,
)

__all__ = [
    "automorphism_count",
    "automorphism_count_by_permutations",
    "check_complement_inequality",
    "check_motif_regime",
    "find_balanced_motif",
    "is_balanced",
    "max_subgraph_density",
    "ratio_interval",
    "simplest_fraction_between",
]
