from fractions import Fraction
from itertools import product
from typing import List

import numpy as np

from hyperplant.config import ENUMERATION_BUDGET_LOG2
from hyperplant.core.errors import BudgetExceededError
from hyperplant.core.schemas import ExactDistribution, ExactOutcome, ProblemParams
from hyperplant.hypergraph.structures import AdjacencyTensor, edge_table


def _check_budget(params: ProblemParams) -> None:
    if params.n + params.M > ENUMERATION_BUDGET_LOG2:
        raise BudgetExceededError(
            f"Exact enumeration needs 2^{params.n + params.M} outcomes (budget 2^{ENUMERATION_BUDGET_LOG2})"
        )


def _all_tensors(params: ProblemParams) -> List[AdjacencyTensor]:
    return [
        AdjacencyTensor(n=params.n, r=params.r, bits=np.array(bits, dtype=bool))
        for bits in product((False, True), repeat=params.M)
    ]


def _bernoulli_mass(bits: np.ndarray, probs: List[Fraction]) -> Fraction:
    mass = Fraction(1)
    for present, prob in zip(bits, probs):
        mass *= prob if present else 1 - prob
    return mass


def enumerate_planted_exact(params: ProblemParams, p: Fraction | None = None) -> ExactDistribution:
    """All (Z, Y) outcomes of P with exact rational probabilities.

    Rates are the exact rationals of the float parameters; `p` overrides the
    planted edge rate (p = q collapses to the null product measure).
    """
    _check_budget(params)
    p_exact, q_exact, rho_exact = params.exact_rates()
    if p is not None:
        p_exact = Fraction(p)

    table = edge_table(params.n, params.r)
    tensors = _all_tensors(params)
    outcomes: List[ExactOutcome] = []
    for z in product((False, True), repeat=params.n):
        size = sum(z)
        z_mass = rho_exact**size * (1 - rho_exact) ** (params.n - size)
        inside = np.all(np.array(z, dtype=bool)[table - 1], axis=1)
        probs = [p_exact if flag else q_exact for flag in inside]
        Z = frozenset(i + 1 for i, flag in enumerate(z) if flag)
        for Y in tensors:
            outcomes.append(ExactOutcome(Z=Z, Y=Y, probability=z_mass * _bernoulli_mass(Y.bits, probs)))
    return ExactDistribution(n=params.n, r=params.r, outcomes=outcomes)


def enumerate_null_exact(params: ProblemParams) -> ExactDistribution:
    """Exact null product measure; Z is empty in every outcome."""
    if params.M > ENUMERATION_BUDGET_LOG2:
        raise BudgetExceededError(f"Null enumeration needs 2^{params.M} outcomes")
    _, q_exact, _ = params.exact_rates()
    probs = [q_exact] * params.M
    outcomes = [
        ExactOutcome(Z=frozenset(), Y=Y, probability=_bernoulli_mass(Y.bits, probs)) for Y in _all_tensors(params)
    ]
    return ExactDistribution(n=params.n, r=params.r, outcomes=outcomes)
