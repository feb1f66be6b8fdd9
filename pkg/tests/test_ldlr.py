from fractions import Fraction
from itertools import combinations

import mpmath
import pytest

from hyperplant.core.errors import BudgetExceededError, InvalidArgumentError
from hyperplant.core.states import LdlrMethod
from hyperplant.hypergraph import AdjacencyTensor, Hypergraph, induced_vertices, rank_edge
from hyperplant.ldlr import (
    build_conditioning_spec,
    conditional_ldlr_exact_tiny,
    estimate_event_probability,
    event_failure_bound,
    event_holds,
    ldlr_norm_bruteforce,
    ldlr_norm_exact,
    logsumexp,
    phi_expectation_planted,
    phi_numerator_exact,
    planted_edges,
    psi_union_expectation_exact,
)
from hyperplant.models import derive_params, enumerate_null_exact, enumerate_planted_exact
from tests.utils import all_edges, brute_force_class_counts, centered_product

# (alpha, beta, gamma) with alpha < beta < 1 so that r = 2 and r = 3 both apply
EXPONENTS = [(0.2, 0.5, 0.3), (0.5, 0.8, 0.25), (0.3, 0.9, 0.7), (0.1, 0.3, 0.5)]


def tiny_params():
    return derive_params(4, 2, 0.5, 0.8, 0.25)


def _rel_close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(abs(a), abs(b))


@pytest.mark.parametrize("alpha,beta,gamma", EXPONENTS)
@pytest.mark.parametrize("n,r,D", [(4, 2, 3), (5, 2, 2), (5, 3, 2)])
def test_exact_formula_matches_brute_force(n, r, D, alpha, beta, gamma):
    params = derive_params(n, r, alpha, beta, gamma)
    exact = ldlr_norm_exact(params, D)
    brute = ldlr_norm_bruteforce(params, D)
    assert exact.method == LdlrMethod.EXACT
    assert brute.method == LdlrMethod.BRUTEFORCE
    assert _rel_close(exact.value - 1, brute.value - 1)


def test_class_terms_use_subgraph_class_counts():
    params = derive_params(5, 2, 0.2, 0.5, 0.3)
    reference = brute_force_class_counts(5, 2, 3)
    exact = ldlr_norm_exact(params, 3)
    assert {(t.ell, t.m): t.class_count for t in exact.per_class_terms} == dict(reference)
    brute = ldlr_norm_bruteforce(params, 3)
    assert {(t.ell, t.m): t.class_count for t in brute.per_class_terms} == dict(reference)


def test_degree_zero_norm_is_one():
    params = tiny_params()
    assert ldlr_norm_exact(params, 0).value == 1
    assert ldlr_norm_exact(params, 0).per_class_terms == []
    assert ldlr_norm_bruteforce(params, 0, exact=True).exact_value == 1


def test_brute_force_exact_value_tracks_float_value():
    params = tiny_params()
    result = ldlr_norm_bruteforce(params, 3, exact=True)
    assert result.exact_value > 1
    assert _rel_close(float(result.exact_value) - 1, float(result.value) - 1, 1e-12)


def test_negative_degree_and_budget_are_rejected():
    with pytest.raises(InvalidArgumentError):
        ldlr_norm_exact(tiny_params(), -1)
    with pytest.raises(BudgetExceededError):
        ldlr_norm_bruteforce(derive_params(30, 3, 0.2, 0.5, 0.3), 4)


def test_exact_formula_is_finite_at_large_n():
    value = ldlr_norm_exact(derive_params(10**6, 2, 0.8, 0.9, 0.6), 10).value
    assert mpmath.isfinite(value)
    assert value > 1


def test_logsumexp_handles_empty_and_tiny_terms():
    assert logsumexp([]) == mpmath.ninf
    with mpmath.workdps(40):
        value = logsumexp([mpmath.mpf(-1000), mpmath.mpf(-1000)])
        assert mpmath.almosteq(value, mpmath.mpf(-1000) + mpmath.log(2), 1e-30)


# --- Enumeration oracles on n = 4 ---
def _edge_sets(max_size):
    edges = all_edges(4, 2)
    return [frozenset(S) for d in range(max_size + 1) for S in combinations(edges, d)]


def test_phi_expectation_matches_planted_enumeration():
    params = tiny_params()
    p, q, rho = params.exact_rates()
    planted = enumerate_planted_exact(params)
    for S in _edge_sets(3):
        expected = planted.expectation(lambda Z, Y, S=S: centered_product(S, lambda e: Y.bits[rank_edge(e, 4, 2)], q))
        assert expected == phi_numerator_exact(S, params), sorted(S)

    S = frozenset({(1, 2), (2, 3)})
    with mpmath.workdps(40):
        sigma = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator * (1 - mpmath.mpf(q.numerator) / q.denominator))
        numerator = phi_numerator_exact(S, params)
        reference = mpmath.mpf(numerator.numerator) / numerator.denominator / sigma**2
        assert mpmath.almosteq(phi_expectation_planted(S, params), reference, 1e-12)


def test_basis_is_orthonormal_under_the_null():
    params = tiny_params()
    _, q, _ = params.exact_rates()
    null = enumerate_null_exact(params)
    var = q * (1 - q)
    sets = _edge_sets(2)
    for S in sets:
        for T in sets:

            def inner(Z, Y, S=S, T=T):
                present = lambda e: Y.bits[rank_edge(e, 4, 2)]  # noqa: E731
                return centered_product(S, present, q) * centered_product(T, present, q)

            expected = var ** len(S) if S == T else 0
            assert null.expectation(inner) == expected


# --- Conditioning ---
def test_tiny_index_set():
    spec = build_conditioning_spec(tiny_params(), 0.1, 3)
    assert spec.m_table == {2: 2, 3: 2, 4: 3, 5: 3, 6: 4}
    assert spec.index_set == [(3, 2), (3, 3), (4, 3)]
    assert spec.is_dense(3, 2)
    assert not spec.is_dense(2, 1)


def test_decimal_exponents_give_exact_ceilings():
    params = derive_params(50, 2, 0.2, 0.5, 0.3)
    spec = build_conditioning_spec(params, 0.1, 3)
    # 5 * (0.3 / 0.2 + 0.1) is exactly 8
    assert spec.m_table[5] == 8


def test_conditioning_rejects_bad_delta():
    with pytest.raises(InvalidArgumentError):
        build_conditioning_spec(tiny_params(), 0.0, 3)


def test_event_on_hand_built_samples():
    params = tiny_params()
    spec = build_conditioning_spec(params, 0.1, 3)

    def tensor(edges):
        return AdjacencyTensor.from_hypergraph(Hypergraph(n=4, r=2, edges=edges))

    assert not event_holds({1, 2, 3}, tensor([(1, 2), (1, 3)]), params, spec)
    assert event_holds({1, 2, 3}, tensor([(1, 2)]), params, spec)
    assert event_holds({1, 2}, tensor([(1, 2), (2, 3)]), params, spec)
    assert planted_edges({1, 2}, tensor([(1, 2), (2, 3)])) == [(1, 2)]


def test_conditional_norm_equals_brute_force_without_dense_classes():
    params = tiny_params()
    spec = build_conditioning_spec(params, 10.0, 2)
    assert spec.index_set == []
    conditional = conditional_ldlr_exact_tiny(params, spec)
    brute = ldlr_norm_bruteforce(params, 2, exact=True)
    assert conditional.method == LdlrMethod.CONDITIONAL
    assert conditional.event_probability == 1
    assert conditional.exact_value == brute.exact_value
    assert conditional.bad_sum == 0


def test_conditional_terms_respect_good_and_bad_bounds():
    params = tiny_params()
    spec = build_conditioning_spec(params, 0.1, 3)
    result = conditional_ldlr_exact_tiny(params, spec)
    assert 0 < result.event_probability < 1
    assert result.good_bound_violations == 0
    assert result.bad_bound_violations == 0
    assert result.exact_value == 1 + result.good_sum + result.bad_sum
    assert result.bad_sum > 0
    assert 1 - float(result.event_probability) <= event_failure_bound(params, spec) + 1e-12


def test_event_probability_estimate_matches_exact_value():
    params = tiny_params()
    spec = build_conditioning_spec(params, 0.1, 3)
    exact = float(conditional_ldlr_exact_tiny(params, spec).event_probability)
    estimate = estimate_event_probability(params, spec, trials=4000, seed=13, workers=1)
    assert estimate.trials == 4000
    assert abs(estimate.probability - exact) <= 4 * estimate.standard_error + 1e-9


def test_event_probability_is_one_without_dense_classes():
    params = tiny_params()
    spec = build_conditioning_spec(params, 10.0, 2)
    estimate = estimate_event_probability(params, spec, trials=5, seed=0)
    assert estimate.probability == 1.0
    assert estimate.failure_union_bound == 0.0


def test_conditional_oracle_budget():
    params = derive_params(7, 2, 0.5, 0.8, 0.25)
    spec = build_conditioning_spec(params, 0.1, 2)
    with pytest.raises(BudgetExceededError):
        conditional_ldlr_exact_tiny(params, spec)


def test_psi_union_expectation():
    params = tiny_params()
    p, q, rho = params.exact_rates()
    value, bound = psi_union_expectation_exact([(1, 2)], [(1, 2)], params)
    assert value == rho**2 * p + (1 - rho**2) * q
    assert bound == 16 * rho**2 * p

    value, bound = psi_union_expectation_exact([(1, 2), (2, 3)], [(2, 3), (3, 4)], params)
    assert value <= bound
    assert value > 0
    assert isinstance(value, Fraction)


def test_degree_one_norm_at_n4_has_a_closed_value():
    # Only single edges contribute: 6 * rho^4 * (p - q)^2 / sigma^2 = 1.5 * (1/sqrt(2) - 1/2)^2
    params = derive_params(4, 2, 0.25, 0.5, 0.5)
    expected = 1 + 1.5 * (2**-0.5 - 0.5) ** 2
    exact = ldlr_norm_exact(params, 1)
    assert float(exact.value) == pytest.approx(expected, rel=1e-12)
    assert float(exact.value) == pytest.approx(1.06434, abs=1e-5)
    assert float(ldlr_norm_bruteforce(params, 1).value) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n,r", [(10, 2), (1000, 2), (50, 3)])
def test_norm_is_nondecreasing_in_degree(n, r):
    params = derive_params(n, r, 0.3, 0.5, 0.6)
    values = [ldlr_norm_exact(params, D).value for D in range(0, 8)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def _copies(motif_edges, n=4):
    """Every edge set of K_n isomorphic to the motif, as frozensets of canonical edges."""
    edges = all_edges(n, 2)
    shape = sorted(len([e for e in motif_edges if v in e]) for v in induced_vertices(motif_edges))
    copies = set()
    for S in combinations(edges, len(motif_edges)):
        if sorted(len([e for e in S if v in e]) for v in induced_vertices(S)) == shape:
            copies.add(frozenset(S))
    return sorted(copies, key=sorted)


@pytest.mark.parametrize("motif_edges", [[(1, 2), (2, 3)], [(1, 2), (3, 4)]], ids=["cherry", "matching"])
def test_psi_union_matches_enumeration_for_all_copy_pairs(motif_edges):
    params = tiny_params()
    planted = enumerate_planted_exact(params)
    copies = _copies(motif_edges)
    assert len(copies) == (12 if len(induced_vertices(motif_edges)) == 3 else 3)
    for S1 in copies:
        for S2 in copies:
            union = S1 | S2

            def psi(Z, Y, union=union):
                return Fraction(int(all(Y.bits[rank_edge(e, 4, 2)] for e in union)))

            value, bound = psi_union_expectation_exact(S1, S2, params)
            assert planted.expectation(psi) == value, (sorted(S1), sorted(S2))
            assert value <= bound
