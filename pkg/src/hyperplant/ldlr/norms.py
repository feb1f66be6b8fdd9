"""Squared norm of the degree-D likelihood ratio, closed form and by enumeration.

Basis: phi_S = prod_{e in S} (Y_e - q) / sigma over edge sets S with |S| <= D.
Under the planted model E[phi_S] = rho^{|V(S)|} ((p - q) / sigma)^{|S|}, so the
norm groups into classes S_{l,m} of edge-induced subgraphs with l vertices and
m edges.
"""

import logging
import math
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import mpmath

from hyperplant.config import BRUTEFORCE_BUDGET, MP_DPS
from hyperplant.core.errors import BudgetExceededError, InvalidArgumentError
from hyperplant.core.schemas import ClassTerm, LdlrResult, ProblemParams
from hyperplant.core.states import LdlrMethod
from hyperplant.hypergraph.counting import count_subgraph_class
from hyperplant.hypergraph.structures import EdgeSubgraph, Hyperedge, edge_table, induced_vertices
from hyperplant.ldlr.numerics import logsumexp

logger = logging.getLogger(__name__)


def _log_rates(params: ProblemParams):
    rho, p, q, sigma = (mpmath.mpf(x) for x in (params.rho, params.p, params.q, params.sigma))
    return mpmath.log(rho), (p - q) / sigma


def phi_expectation_planted(S: EdgeSubgraph | Iterable[Hyperedge], params: ProblemParams) -> mpmath.mpf:
    """E_P[phi_S] evaluated in log space."""
    if not isinstance(S, EdgeSubgraph):
        S = EdgeSubgraph(edges=S)
    if S.m == 0:
        return mpmath.mpf(1)
    with mpmath.workdps(MP_DPS):
        log_rho, drift = _log_rates(params)
        return mpmath.exp(S.ell * log_rho + S.m * mpmath.log(drift))


def phi_numerator_exact(S: EdgeSubgraph | Iterable[Hyperedge], params: ProblemParams) -> Fraction:
    """sigma^{|S|} E_P[phi_S] = rho^{|V(S)|} (p - q)^{|S|}, exact in the rational rates."""
    if not isinstance(S, EdgeSubgraph):
        S = EdgeSubgraph(edges=S)
    p, q, rho = params.exact_rates()
    return rho**S.ell * (p - q) ** S.m


def _check_degree(D: int) -> None:
    if D < 0:
        raise InvalidArgumentError(f"D >= 0 violated (D={D})")


def ldlr_norm_exact(params: ProblemParams, D: int) -> LdlrResult:
    """1 + sum over classes of |S_{l,m}| rho^{2l} ((p-q)^2 / sigma^2)^m."""
    _check_degree(D)
    r = params.r
    with mpmath.workdps(MP_DPS):
        log_rho, drift = _log_rates(params)
        log_drift2 = 2 * mpmath.log(drift) if drift != 0 else mpmath.ninf

        terms, logs = [], []
        for ell in range(r, r * D + 1):
            for m in range(-(-ell // r), D + 1):
                count = count_subgraph_class(params.n, ell, m, r)
                if count == 0:
                    continue
                log_term = mpmath.log(count) + 2 * ell * log_rho + m * log_drift2
                logs.append(log_term)
                terms.append(ClassTerm(ell=ell, m=m, class_count=count, term=mpmath.exp(log_term)))

        value = 1 + mpmath.exp(logsumexp(logs)) if logs else mpmath.mpf(1)
    logger.debug("ldlr exact n=%d D=%d classes=%d value-1=%s", params.n, D, len(terms), mpmath.nstr(value - 1, 6))
    return LdlrResult(method=LdlrMethod.EXACT, D=D, value=value, per_class_terms=terms)


def ldlr_norm_bruteforce(params: ProblemParams, D: int, exact: bool = False) -> LdlrResult:
    """Sum of E_P[phi_S]^2 over every edge set |S| <= D of K_n^r.

    With `exact`, also returns the norm as an exact rational in the float rates.
    """
    _check_degree(D)
    visits = sum(math.comb(params.M, d) for d in range(min(D, params.M) + 1))
    if visits > BRUTEFORCE_BUDGET:
        raise BudgetExceededError(f"Brute-force LDLR visits {visits} edge sets (budget {BRUTEFORCE_BUDGET})")

    edges = [tuple(int(v) for v in row) for row in edge_table(params.n, params.r)]
    with mpmath.workdps(MP_DPS):
        rho = mpmath.mpf(params.rho)
        drift = (mpmath.mpf(params.p) - params.q) / params.sigma
        total = mpmath.mpf(1)
        classes: Counter = Counter()
        for d in range(1, min(D, params.M) + 1):
            for S in combinations(edges, d):
                ell = len(induced_vertices(S))
                classes[(ell, d)] += 1
                total += (rho**ell * drift**d) ** 2
        terms = [
            ClassTerm(ell=ell, m=m, class_count=count, term=count * (rho**ell * drift**m) ** 2)
            for (ell, m), count in sorted(classes.items())
        ]
        value = total

    exact_value = None
    if exact:
        p, q, rho = params.exact_rates()
        var = q * (1 - q)
        exact_value = Fraction(1) + sum(
            (count * rho ** (2 * ell) * ((p - q) ** 2 / var) ** m for (ell, m), count in classes.items()),
            Fraction(0),
        )
    return LdlrResult(method=LdlrMethod.BRUTEFORCE, D=D, value=value, per_class_terms=terms, exact_value=exact_value)
