from .conditioning import (
    bad_term_bound,
    build_conditioning_spec,
    conditional_ldlr_exact_tiny,
    estimate_event_probability,
    event_failure_bound,
    event_holds,
    good_term_bound,
    planted_edges,
    psi_union_expectation_exact,
)
from .norms import ldlr_norm_bruteforce, ldlr_norm_exact, phi_expectation_planted, phi_numerator_exact
from .numerics import logsumexp

__all__ = [
    "bad_term_bound",
    "build_conditioning_spec",
    "conditional_ldlr_exact_tiny",
    "estimate_event_probability",
    "event_failure_bound",
    "event_holds",
    "good_term_bound",
    "ldlr_norm_bruteforce",
    "ldlr_norm_exact",
    "logsumexp",
    "phi_expectation_planted",
    "phi_numerator_exact",
    "planted_edges",
    "psi_union_expectation_exact",
]
