import math
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from hyperplant.core.errors import BudgetExceededError, InfeasibleParametersError, InvalidArgumentError
from hyperplant.core.schemas import ProblemParams
from hyperplant.core.states import Model
from hyperplant.hypergraph import edge_table
from hyperplant.models import (
    aux_ldlr_upper_bound,
    aux_moment_analytic_bound,
    aux_moment_exact,
    aux_pair_probabilities,
    aux_spike,
    check_aux_feasible,
    child_rng,
    derive_params,
    enumerate_null_exact,
    enumerate_planted_exact,
    sample_aux,
    sample_null,
    sample_planted,
)


def test_derive_params_uses_log_density_rates():
    params = derive_params(100, 2, 0.3, 0.5, 0.75)
    assert params.p == pytest.approx(100**-0.3)
    assert params.q == pytest.approx(100**-0.5)
    assert params.rho == pytest.approx(100**-0.25)
    assert params.sigma == pytest.approx(math.sqrt(params.q * (1 - params.q)))
    assert params.M == 4950


@pytest.mark.parametrize(
    "args,needle",
    [
        ((100, 2, 0.5, 0.5, 0.5), "alpha < beta"),
        ((100, 2, 0.3, 1.0, 0.5), "beta < r-1"),
        ((100, 2, 0.3, 0.5, 1.0), "gamma < 1"),
        ((100, 1, 0.3, 0.5, 0.5), "r >= 2"),
        ((2, 3, 0.3, 0.5, 0.5), "n >= r"),
        ((100, 2, 0.0, 0.5, 0.5), "0 < alpha"),
    ],
)
def test_derive_params_names_the_violated_constraint(args, needle):
    with pytest.raises(InvalidArgumentError) as excinfo:
        derive_params(*args)
    assert needle in str(excinfo.value)


def test_relaxed_params_skip_only_alpha_below_beta():
    params = derive_params(100, 2, 0.9, 0.5, 0.5, relaxed=True)
    assert params.p < params.q
    with pytest.raises(InvalidArgumentError):
        derive_params(100, 2, 0.9, 1.5, 0.5, relaxed=True)


def test_missing_exponent_is_a_validation_error():
    with pytest.raises(ValidationError) as excinfo:
        ProblemParams(n=10, r=2, alpha=0.3, beta=0.5)
    assert "gamma" in str(excinfo.value)


def test_samples_are_reproducible_per_seed_and_trial():
    params = derive_params(30, 3, 0.2, 0.6, 0.7)
    assert sample_null(params, seed=7, trial=3) == sample_null(params, seed=7, trial=3)
    assert sample_null(params, seed=7, trial=3) != sample_null(params, seed=7, trial=4)
    first, second = sample_planted(params, seed=7), sample_planted(params, seed=7)
    assert first.Z == second.Z
    assert first.Y == second.Y


def test_model_streams_are_distinct():
    a = child_rng(11, Model.NULL, 0).random(8)
    b = child_rng(11, Model.PLANTED, 0).random(8)
    assert not np.array_equal(a, b)


def test_planted_edges_inside_z_use_p():
    params = derive_params(12, 2, 0.2, 0.6, 0.8)
    table = edge_table(params.n, params.r)
    inside = present = 0
    for trial in range(300):
        sample = sample_planted(params, seed=3, trial=trial)
        z = np.zeros(params.n + 1, dtype=bool)
        z[list(sample.Z)] = True
        mask = z[table[:, 0]] & z[table[:, 1]]
        inside += int(mask.sum())
        present += int(sample.Y.bits[mask].sum())
    freq = present / inside
    se = math.sqrt(params.p * (1 - params.p) / inside)
    assert abs(freq - params.p) <= 4 * se


@pytest.mark.parametrize("n,r", [(12, 2), (8, 3)])
def test_null_density_is_q_and_edges_are_exchangeable(n, r):
    params = derive_params(n, r, 0.2, 0.6, 0.8)
    trials = 2000
    counts = np.zeros(params.M, dtype=np.int64)
    for trial in range(trials):
        counts += sample_null(params, seed=21, trial=trial).bits
    q = params.q

    density = counts.sum() / (trials * params.M)
    assert abs(density - q) <= 4 * math.sqrt(q * (1 - q) / (trials * params.M))

    # Every edge has the same Bin(trials, q) law, whatever its rank
    per_edge_sd = math.sqrt(trials * q * (1 - q))
    assert np.all(np.abs(counts - trials * q) <= 5 * per_edge_sd)
    half = params.M // 2
    first, second = counts[:half].mean(), counts[half:].mean()
    assert abs(first - second) <= 4 * per_edge_sd * math.sqrt(1 / half + 1 / (params.M - half))


def test_planted_set_size_is_binomial():
    params = derive_params(200, 2, 0.2, 0.6, 0.7)
    trials = 400
    sizes = np.array([len(sample_planted(params, seed=4, trial=t).Z) for t in range(trials)])
    rho, n = params.rho, params.n
    assert abs(sizes.mean() - rho * n) <= 4 * math.sqrt(n * rho * (1 - rho) / trials)


def test_planted_set_is_empty_at_the_binomial_rate():
    # rho * n is about 1.1, so Z is empty in roughly 30% of draws
    params = derive_params(10, 2, 0.2, 0.6, 0.05)
    trials = 2000
    samples = [sample_planted(params, seed=9, trial=t) for t in range(trials)]
    empty = [s for s in samples if not s.Z]
    expected = (1 - params.rho) ** params.n
    assert abs(len(empty) / trials - expected) <= 4 * math.sqrt(expected * (1 - expected) / trials)

    # With Z empty every edge is drawn at q
    present = sum(s.Y.count() for s in empty)
    total = len(empty) * params.M
    assert abs(present / total - params.q) <= 4 * math.sqrt(params.q * (1 - params.q) / total)


def test_exact_planted_marginal():
    params = derive_params(3, 2, 0.5, 0.8, 0.25)
    p, q, rho = params.exact_rates()
    dist = enumerate_planted_exact(params)
    assert sum(o.probability for o in dist.outcomes) == 1
    for index in range(params.M):
        assert dist.edge_marginal(index) == rho**2 * p + (1 - rho**2) * q


def test_p_equal_q_collapses_to_the_null_measure():
    params = derive_params(3, 2, 0.5, 0.8, 0.25)
    _, q, _ = params.exact_rates()
    planted = enumerate_planted_exact(params, p=q)
    null = enumerate_null_exact(params)

    def all_present(Z, Y):
        return Fraction(int(Y.bits.all()))

    assert planted.expectation(all_present) == null.expectation(all_present) == q**3
    for index in range(params.M):
        assert planted.edge_marginal(index) == q


def test_exact_enumeration_respects_budget():
    params = derive_params(8, 2, 0.5, 0.8, 0.25)
    with pytest.raises(BudgetExceededError):
        enumerate_planted_exact(params)


# --- Auxiliary rank-one model ---
def aux_params(n=100):
    return derive_params(n, 2, 0.6, 0.9, 0.6, relaxed=True)


def test_aux_spike_reproduces_planted_rate():
    params = aux_params()
    probs = aux_pair_probabilities(params, aux_spike(params))
    assert probs["planted-planted"] == pytest.approx(params.p, rel=1e-12)
    assert all(0 <= v <= 1 for v in probs.values())


def test_aux_requires_graphs_and_feasible_probabilities():
    with pytest.raises(InvalidArgumentError):
        check_aux_feasible(derive_params(20, 3, 0.6, 0.9, 0.6))
    infeasible = derive_params(100, 2, 0.2, 0.9, 0.9)
    with pytest.raises(InfeasibleParametersError) as excinfo:
        sample_aux(infeasible, seed=0)
    assert "planted-unplanted" in str(excinfo.value)


def test_aux_sample_shape_and_signs():
    params = aux_params(40)
    spike, Y = sample_aux(params, seed=5)
    assert Y.M == params.M
    assert spike.lambda_spike == pytest.approx(aux_spike(params))
    assert set(spike.signs()) <= {-1, 1}
    assert len(spike.signs()) == params.n


def test_aux_standardized_edges_have_mean_zero():
    params = aux_params(100)
    trials = 400
    # Per-trial sum of (Y_e - q) / sigma; E[u_i u_j] = 0 so every edge is centred
    totals = np.array(
        [(sample_aux(params, seed=12, trial=t)[1].count() - params.M * params.q) / params.sigma for t in range(trials)]
    )
    se = totals.std(ddof=1) / math.sqrt(trials)
    assert abs(totals.mean()) <= 4 * se
    # Edge indicators are pairwise uncorrelated with variance sigma^2, so Var = M
    assert 0.7 * params.M <= totals.var(ddof=1) <= 1.3 * params.M


def test_aux_moments_exact():
    params = aux_params()
    moments = aux_moment_exact(params, 2)
    assert moments[0] == 1
    # <u, v> is a sum of n centered unit-variance products
    assert moments[1] == params.n
    assert moments[2] >= 3 * params.n**2 - 2 * params.n
    assert aux_moment_analytic_bound(params, 0) == 1
    assert float(aux_moment_analytic_bound(params, 1)) >= float(moments[1])


@pytest.mark.parametrize("method", ["montecarlo", "exact"])
def test_aux_bound_is_one_at_degree_zero(method):
    result = aux_ldlr_upper_bound(aux_params(), 0, trials=10, seed=1, method=method)
    assert result.value == 1.0
    assert len(result.terms) == 1


def test_aux_bound_without_spike_is_one():
    result = aux_ldlr_upper_bound(aux_params(), 6, trials=1, seed=0, method="exact", lambda_spike=0.0)
    assert result.value == 1.0


def test_aux_bound_estimate_agrees_with_exact_series():
    params = aux_params(200)
    exact = aux_ldlr_upper_bound(params, 3, trials=1, seed=0, method="exact")
    mc = aux_ldlr_upper_bound(params, 3, trials=20000, seed=2)
    assert abs(mc.value - exact.value) <= 4 * mc.value_se + 1e-12
    assert exact.value >= 1.0


def test_aux_bound_rejects_bad_arguments():
    with pytest.raises(InvalidArgumentError):
        aux_ldlr_upper_bound(aux_params(), -1, trials=5, seed=0)
    with pytest.raises(InvalidArgumentError):
        aux_ldlr_upper_bound(aux_params(), 2, trials=5, seed=0, method="closed-form")
