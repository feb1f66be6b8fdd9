from .aux import aux_ldlr_upper_bound, aux_moment_analytic_bound, aux_moment_exact
from .exact import enumerate_null_exact, enumerate_planted_exact
from .params import derive_params
from .samplers import (
    aux_pair_probabilities,
    aux_spike,
    check_aux_feasible,
    child_rng,
    sample_aux,
    sample_null,
    sample_planted,
)

__all__ = [
    "aux_ldlr_upper_bound",
    "aux_moment_analytic_bound",
    "aux_moment_exact",
    "aux_pair_probabilities",
    "aux_spike",
    "check_aux_feasible",
    "child_rng",
    "derive_params",
    "enumerate_null_exact",
    "enumerate_planted_exact",
    "sample_aux",
    "sample_null",
    "sample_planted",
]
