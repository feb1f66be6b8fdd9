"""Moment-series bound on the low-degree norm of the auxiliary rank-one model.

With u, v independent copies of the spike vector, the bound is
    sum_{d=0}^{D} lambda^{2d} / d! * E<u, v>^{2d}.
Each coordinate product u_i v_i takes three values, so <u, v> is determined by
a multinomial count of the value types; both the Monte Carlo and the exact
evaluators work from that representation.
"""

import logging
import math
from fractions import Fraction
from typing import List

import mpmath
import numpy as np

from hyperplant.config import MP_DPS
from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import AuxBoundResult, AuxBoundTerm, ProblemParams
from hyperplant.core.states import Model
from hyperplant.models.samplers import aux_spike, check_aux_feasible, child_rng

logger = logging.getLogger(__name__)


def _product_law(rho: float):
    """Values and probabilities of u_i v_i: both planted, one planted, none planted."""
    values = np.array([(1.0 - rho) / rho, -1.0, rho / (1.0 - rho)])
    probs = np.array([rho * rho, 2.0 * rho * (1.0 - rho), (1.0 - rho) ** 2])
    return values, probs


def aux_moment_exact(params: ProblemParams, d_max: int) -> List[Fraction]:
    """E<u, v>^{2d} for d = 0..d_max, exact in the rational value of rho.

    Cumulants of the sum are n times the cumulants of one coordinate product.
    """
    rho = Fraction(params.rho)
    values = [(1 - rho) / rho, Fraction(-1), rho / (1 - rho)]
    probs = [rho * rho, 2 * rho * (1 - rho), (1 - rho) ** 2]
    k_max = 2 * d_max

    raw = [sum(p * v**k for p, v in zip(probs, values)) for k in range(k_max + 1)]
    kappa = [Fraction(0)] * (k_max + 1)
    for k in range(1, k_max + 1):
        kappa[k] = raw[k] - sum(math.comb(k - 1, j - 1) * kappa[j] * raw[k - j] for j in range(1, k))

    moments = [Fraction(1)] + [Fraction(0)] * k_max
    for k in range(1, k_max + 1):
        moments[k] = sum(math.comb(k - 1, j - 1) * params.n * kappa[j] * moments[k - j] for j in range(1, k + 1))
    return [moments[2 * d] for d in range(d_max + 1)]


def aux_moment_analytic_bound(params: ProblemParams, d: int):
    """sqrt(2 pi) rho^{-2d} [(4 d rho^2 n)^d + (8d/3)^{2d}]; 1 at d = 0."""
    if d == 0:
        return mpmath.mpf(1)
    with mpmath.workdps(MP_DPS):
        rho = mpmath.mpf(params.rho)
        return mpmath.sqrt(2 * mpmath.pi) * rho ** (-2 * d) * (
            (4 * d * rho**2 * params.n) ** d + (mpmath.mpf(8 * d) / 3) ** (2 * d)
        )


def aux_ldlr_upper_bound(
    params: ProblemParams,
    D: int,
    trials: int,
    seed: int,
    method: str = "montecarlo",
    lambda_spike: float | None = None,
) -> AuxBoundResult:
    """Evaluate the moment series; `lambda_spike` overrides the feasible spike (degenerate checks)."""
    if D < 0:
        raise InvalidArgumentError(f"D >= 0 violated (D={D})")
    if trials < 1:
        raise InvalidArgumentError(f"trials >= 1 violated (trials={trials})")
    if method not in ("montecarlo", "exact"):
        raise InvalidArgumentError(f"Unknown aux bound method {method!r}")
    if lambda_spike is None:
        check_aux_feasible(params)
        lambda_spike = aux_spike(params)
    elif params.r != 2:
        raise InvalidArgumentError(f"The auxiliary model is defined for r=2 only (r={params.r})")

    weights = [lambda_spike ** (2 * d) / math.factorial(d) for d in range(D + 1)]
    bounds = [float(aux_moment_analytic_bound(params, d)) for d in range(D + 1)]

    if method == "exact":
        with mpmath.workdps(MP_DPS):
            moments = [mpmath.mpf(m.numerator) / m.denominator for m in aux_moment_exact(params, D)]
            terms = [mpmath.mpf(w) * mom for w, mom in zip(weights, moments)]
            value = float(mpmath.fsum(terms))
        rows = [
            AuxBoundTerm(d=d, moment=float(mom), moment_se=0.0, term=float(t), term_se=0.0, analytic_moment_bound=b)
            for d, (mom, t, b) in enumerate(zip(moments, terms, bounds))
        ]
        return AuxBoundResult(method=method, lambda_spike=lambda_spike, value=value, value_se=0.0, terms=rows)

    # 1. Draw <u, v> per trial from the multinomial of coordinate-product types
    rng = child_rng(seed, Model.AUX, 0)
    values, probs = _product_law(params.rho)
    counts = rng.multinomial(params.n, probs, size=trials)
    inner = counts @ values

    # 2. Per-degree averages and the per-trial series value
    rows: List[AuxBoundTerm] = []
    series = np.zeros(trials)
    for d, (w, b) in enumerate(zip(weights, bounds)):
        powers = inner ** (2 * d)
        series += w * powers
        moment = float(powers.mean())
        moment_se = float(powers.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
        rows.append(
            AuxBoundTerm(
                d=d, moment=moment, moment_se=moment_se, term=w * moment, term_se=w * moment_se, analytic_moment_bound=b
            )
        )
    value = float(series.mean())
    value_se = float(series.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    logger.debug("aux bound n=%d D=%d value=%.6g se=%.2g", params.n, D, value, value_se)
    return AuxBoundResult(method=method, lambda_spike=lambda_spike, value=value, value_se=value_se, terms=rows)
