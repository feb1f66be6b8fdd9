import logging
from typing import List, Sequence

import mpmath

from hyperplant.core.errors import HyperplantError
from hyperplant.core.schemas import BalancedMotif, PhaseCell
from hyperplant.core.states import CellStatus, StatisticKind
from hyperplant.balanced.search import find_balanced_motif
from hyperplant.ldlr.norms import ldlr_norm_exact
from hyperplant.models.params import derive_params
from hyperplant.stats.decision import classify_regime
from hyperplant.stats.separation import estimate_separation

logger = logging.getLogger(__name__)


def _invalid(alpha: float, gamma: float, n: int, message: str) -> PhaseCell:
    return PhaseCell(alpha=alpha, gamma=gamma, n=n, status=CellStatus.INVALID, regime="invalid", message=message)


def _cell_motif(alpha: float, beta: float, gamma: float, r: int) -> BalancedMotif | None:
    try:
        return find_balanced_motif(alpha, beta, gamma, r)
    except HyperplantError as e:
        logger.debug("no motif for alpha=%s gamma=%s: %s", alpha, gamma, e)
        return None


def run_cell(
    alpha: float, beta: float, gamma: float, n: int, r: int, D: int, trials: int, seed: int,
    workers: int | None = None,
) -> PhaseCell:
    # 1. Validity and regime
    try:
        params = derive_params(n, r, alpha, beta, gamma)
        regime = classify_regime(alpha, beta, gamma, r)
    except HyperplantError as e:
        return _invalid(alpha, gamma, n, str(e))

    # 2. Closed-form LDLR
    value = ldlr_norm_exact(params, D).value
    ldlr_minus_1 = mpmath.nstr(value - 1, 12)

    # 3. Optional Monte Carlo separation with the statistic of the gamma branch
    separation = sep_se = None
    if trials >= 2:
        if gamma >= 0.5:
            report, _ = estimate_separation(params, StatisticKind.EDGE, trials, seed, workers=workers)
            separation, sep_se = report.separation, report.separation_se
        else:
            motif = _cell_motif(alpha, beta, gamma, r)
            if motif is not None and motif.ell <= n:
                report, _ = estimate_separation(params, StatisticKind.MOTIF, trials, seed, motif=motif, workers=workers)
                separation, sep_se = report.separation, report.separation_se

    return PhaseCell(
        alpha=alpha,
        gamma=gamma,
        n=n,
        status=CellStatus.OK,
        regime=regime.regime.value,
        ldlr_minus_1=ldlr_minus_1,
        separation=separation,
        sep_se=sep_se,
    )


def run_phase_diagram(
    beta: float,
    r: int,
    alpha_grid: Sequence[float],
    gamma_grid: Sequence[float],
    n_grid: Sequence[int],
    D: int,
    trials: int,
    seed: int,
    workers: int | None = None,
) -> List[PhaseCell]:
    """Rows in grid order (alpha, then gamma, then n); invalid cells are recorded, never fatal."""
    rows: List[PhaseCell] = []
    for alpha in alpha_grid:
        for gamma in gamma_grid:
            for n in n_grid:
                cell = run_cell(alpha, beta, gamma, n, r, D, trials, seed, workers)
                logger.debug("cell alpha=%s gamma=%s n=%s -> %s", alpha, gamma, n, cell.regime)
                rows.append(cell)
    return rows
