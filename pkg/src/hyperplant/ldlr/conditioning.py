"""Conditioning on the event E that the planted part holds no dense subgraph.

m_l = ceil(l (gamma/alpha + delta)); the index set I holds the (l, m) with
m_l <= m <= D whose class S_{l,m} is nonempty; E fails exactly when C = H[Z]
contains an edge set S with (|V(S)|, |S|) in I.
"""

import logging
import math
from collections import defaultdict
from fractions import Fraction
from functools import partial
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Tuple

import mpmath

from hyperplant.config import CONDITIONAL_BUDGET_LOG2, EVENT_SUBSET_BUDGET, MP_DPS
from hyperplant.core.errors import BudgetExceededError, InvalidArgumentError
from hyperplant.core.schemas import ClassTerm, ConditioningSpec, EventEstimate, LdlrResult, ProblemParams
from hyperplant.core.states import LdlrMethod
from hyperplant.hypergraph.counting import count_isolated_free_edge_sets
from hyperplant.hypergraph.structures import AdjacencyTensor, Hyperedge, edge_table, induced_vertices
from hyperplant.ldlr.numerics import mp_fraction
from hyperplant.models.samplers import sample_planted
from hyperplant.runner.pool import run_trials

logger = logging.getLogger(__name__)


def _decimal(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def build_conditioning_spec(params: ProblemParams, delta: float, D: int) -> ConditioningSpec:
    if not delta > 0:
        raise InvalidArgumentError(f"delta > 0 violated (delta={delta})")
    if D < 0:
        raise InvalidArgumentError(f"D >= 0 violated (D={D})")
    if params.gamma >= 0.5:
        logger.debug("conditioning spec built outside the gamma < 1/2 branch (gamma=%s)", params.gamma)

    r = params.r
    slope = _decimal(params.gamma) / _decimal(params.alpha) + _decimal(delta)
    m_table = {ell: math.ceil(ell * slope) for ell in range(r, r * D + 1)}
    index_set = [
        (ell, m)
        for ell, m_ell in m_table.items()
        if ell <= params.n
        for m in range(m_ell, D + 1)
        if count_isolated_free_edge_sets(ell, m, r) > 0
    ]
    return ConditioningSpec(r=r, delta=delta, D=D, m_table=m_table, index_set=index_set)


def _dense_thresholds(spec: ConditioningSpec) -> Dict[int, int]:
    """l -> m_l for the vertex counts at which a dense edge set can be witnessed."""
    return {ell: m for ell, m in spec.m_table.items() if m <= spec.D}


def _event_on_edges(c_edges: Iterable[Hyperedge], spec: ConditioningSpec) -> bool:
    """True iff no vertex subset V' of V(C) with m_{|V'|} <= D induces at least m_{|V'|} edges of C.

    Taking any m_l of those edges gives S with (|V(S)|, |S|) in I since m_l is
    nondecreasing; conversely V(S) of an S with (l, m) in I is such a V'.
    """
    if not spec.index_set:
        return True
    c_edges = list(c_edges)
    thresholds = _dense_thresholds(spec)
    if not thresholds or len(c_edges) < min(thresholds.values()):
        return True

    vertices = sorted(induced_vertices(c_edges))
    sizes = [ell for ell in sorted(thresholds) if ell <= len(vertices)]
    inspections = sum(math.comb(len(vertices), ell) for ell in sizes)
    if inspections > EVENT_SUBSET_BUDGET:
        raise BudgetExceededError(
            f"Event check over {len(c_edges)} planted edges needs {inspections} subsets (budget {EVENT_SUBSET_BUDGET})"
        )

    edge_sets = [frozenset(e) for e in c_edges]
    for ell in sizes:
        need = thresholds[ell]
        if len(c_edges) < need:
            # Subsets by increasing size; m_l only grows from here
            break
        for subset in combinations(vertices, ell):
            chosen = frozenset(subset)
            if sum(1 for e in edge_sets if e <= chosen) >= need:
                return False
    return True


def planted_edges(Z: Iterable[int], Y: AdjacencyTensor) -> List[Hyperedge]:
    """Edges of C = H[Z]."""
    Z = frozenset(Z)
    table = edge_table(Y.n, Y.r)
    return [tuple(int(v) for v in row) for row in table[Y.bits] if Z.issuperset(int(v) for v in row)]


def event_holds(Z: Iterable[int], Y: AdjacencyTensor, params: ProblemParams, spec: ConditioningSpec) -> bool:
    if (Y.n, Y.r) != (params.n, params.r) or spec.r != params.r:
        raise InvalidArgumentError("Tensor, parameters and conditioning spec disagree on (n, r)")
    return _event_on_edges(planted_edges(Z, Y), spec)


def _event_trial(params: ProblemParams, spec: ConditioningSpec, seed: int, trial: int) -> bool:
    sample = sample_planted(params, seed, trial)
    return event_holds(sample.Z, sample.Y, params, spec)


def event_failure_bound(params: ProblemParams, spec: ConditioningSpec) -> float:
    """Union bound on P(not E): sum over I of |S_{l,m}| rho^l p^m."""
    with mpmath.workdps(MP_DPS):
        rho, p = mpmath.mpf(params.rho), mpmath.mpf(params.p)
        total = mpmath.fsum(
            math.comb(params.n, ell) * count_isolated_free_edge_sets(ell, m, params.r) * rho**ell * p**m
            for ell, m in spec.index_set
        )
        return float(total)


def estimate_event_probability(
    params: ProblemParams, spec: ConditioningSpec, trials: int, seed: int, workers: int | None = None
) -> EventEstimate:
    if trials < 1:
        raise InvalidArgumentError(f"trials >= 1 violated (trials={trials})")
    bound = event_failure_bound(params, spec)
    if not spec.index_set:
        return EventEstimate(probability=1.0, standard_error=0.0, trials=trials, failure_union_bound=bound)

    hits = run_trials(partial(_event_trial, params, spec, seed), trials, workers)
    prob = sum(hits) / trials
    se = math.sqrt(prob * (1 - prob) / trials)
    logger.debug("P(E) n=%d: %.4f +- %.4f over %d trials", params.n, prob, se, trials)
    return EventEstimate(probability=prob, standard_error=se, trials=trials, failure_union_bound=bound)


# --- Tiny-scale exact oracle ---
def _bernoulli_configs(edges: List[Hyperedge], p: Fraction):
    """Every presence pattern of `edges` (all present with probability p) with its mass."""
    for bits in product((False, True), repeat=len(edges)):
        present = [e for e, b in zip(edges, bits) if b]
        k = len(present)
        yield frozenset(present), p**k * (1 - p) ** (len(edges) - k)


def good_term_bound(ell: int, m: int, params: ProblemParams) -> Fraction:
    """rho^l (2p)^m, bound on |sigma^m E_P[phi_S 1_E]| for S outside I."""
    p, _, rho = params.exact_rates()
    return rho**ell * (2 * p) ** m


def bad_term_bound(ell: int, m: int, m_ell: int, params: ProblemParams) -> Fraction:
    """rho^l C(m, m_l - 1) q^{m - m_l + 1} (2p)^{m_l - 1}, for S with (l, m) in I."""
    p, q, rho = params.exact_rates()
    return rho**ell * math.comb(m, m_ell - 1) * q ** (m - m_ell + 1) * (2 * p) ** (m_ell - 1)


def conditional_ldlr_exact_tiny(params: ProblemParams, spec: ConditioningSpec) -> LdlrResult:
    """Exact norm of the likelihood ratio of P conditioned on E, with P(E) and the good/bad split.

    E_P[phi_S 1_E] vanishes unless V(S) is inside Z, since edges outside C are
    independent of E and centered; for each Z every configuration of C is enumerated.
    """
    n, r, D = params.n, params.r, spec.D
    if n + math.comb(n, r) > CONDITIONAL_BUDGET_LOG2:
        raise BudgetExceededError(
            f"Conditional oracle needs 2^{n + math.comb(n, r)} configurations (budget 2^{CONDITIONAL_BUDGET_LOG2})"
        )
    p, q, rho = params.exact_rates()
    var = q * (1 - q)

    # sigma^{|S|} E_P[phi_S 1_E] per edge set S (S empty gives P(E))
    numerators: Dict[FrozenSet[Hyperedge], Fraction] = defaultdict(Fraction)
    for z in product((False, True), repeat=n):
        Z = [i + 1 for i, flag in enumerate(z) if flag]
        z_mass = rho ** len(Z) * (1 - rho) ** (n - len(Z))
        inner = list(combinations(Z, r))
        candidates = [frozenset(S) for d in range(min(D, len(inner)) + 1) for S in combinations(inner, d)]
        for present, c_mass in _bernoulli_configs(inner, p):
            if not _event_on_edges(present, spec):
                continue
            weight = z_mass * c_mass
            for S in candidates:
                term = weight
                for e in S:
                    term *= (1 - q) if e in present else -q
                numerators[S] += term

    event_prob = numerators[frozenset()]
    if event_prob == 0:
        raise InvalidArgumentError("The conditioning event has probability zero")

    classes: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    good_sum, bad_sum = Fraction(0), Fraction(0)
    good_violations = bad_violations = 0
    for S, numerator in numerators.items():
        if not S:
            continue
        ell, m = len(induced_vertices(S)), len(S)
        square = numerator**2 / (var**m * event_prob**2)
        classes[(ell, m)] += square
        if spec.is_dense(ell, m):
            bad_sum += square
            if abs(numerator) > bad_term_bound(ell, m, spec.m_table[ell], params):
                bad_violations += 1
        else:
            good_sum += square
            if abs(numerator) > good_term_bound(ell, m, params):
                good_violations += 1

    exact_value = 1 + good_sum + bad_sum
    with mpmath.workdps(MP_DPS):
        terms = [
            ClassTerm(ell=ell, m=m, class_count=_class_size(numerators, ell, m), term=mp_fraction(total))
            for (ell, m), total in sorted(classes.items())
        ]
        value = mp_fraction(exact_value)
    return LdlrResult(
        method=LdlrMethod.CONDITIONAL,
        D=D,
        value=value,
        per_class_terms=terms,
        exact_value=exact_value,
        event_probability=event_prob,
        good_sum=good_sum,
        bad_sum=bad_sum,
        good_bound_violations=good_violations,
        bad_bound_violations=bad_violations,
    )


def _class_size(numerators: Dict[FrozenSet[Hyperedge], Fraction], ell: int, m: int) -> int:
    return sum(1 for S in numerators if len(S) == m and len(induced_vertices(S)) == ell)


def psi_union_expectation_exact(
    S1: Iterable[Hyperedge], S2: Iterable[Hyperedge], params: ProblemParams
) -> Tuple[Fraction, Fraction]:
    """E_P[psi_{S1 u S2}] for the unsigned product of edge indicators, and the bound 2^{2l} rho^{|V|} p^{|S|}.

    Only the vertices of S1 u S2 matter, so the expectation is a sum over their
    memberships in Z; l is the motif size |V(S1)|.
    """
    S1, S2 = frozenset(S1), frozenset(S2)
    union = S1 | S2
    vertices = sorted(induced_vertices(union))
    p, q, rho = params.exact_rates()

    total = Fraction(0)
    for z in product((False, True), repeat=len(vertices)):
        inside = {v for v, flag in zip(vertices, z) if flag}
        mass = rho ** len(inside) * (1 - rho) ** (len(vertices) - len(inside))
        for e in union:
            mass *= p if inside.issuperset(e) else q
        total += mass

    ell = len(induced_vertices(S1))
    bound = Fraction(2) ** (2 * ell) * rho ** len(vertices) * p ** len(union)
    return total, bound
