from .decision import classify_refutation, classify_regime, statistic_threshold, statistic_value, threshold_test
from .edge import exact_moments_edge_stat, signed_edge_count, standardized_edge_values
from .motif import compute_N, count_motif, exact_moments_motif_stat, separation_ratio_exponent
from .separation import batch_means, estimate_separation, separation_functional

__all__ = [
    "batch_means",
    "classify_refutation",
    "classify_regime",
    "compute_N",
    "count_motif",
    "estimate_separation",
    "exact_moments_edge_stat",
    "exact_moments_motif_stat",
    "separation_functional",
    "separation_ratio_exponent",
    "signed_edge_count",
    "standardized_edge_values",
    "statistic_threshold",
    "statistic_value",
    "threshold_test",
]
