import logging
import math
from functools import partial
from typing import List, Tuple

import numpy as np

from hyperplant.config import BATCHES
from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import BalancedMotif, ProblemParams, SeparationReport, TrialRecord
from hyperplant.core.states import Model, StatisticKind
from hyperplant.models.samplers import sample_null, sample_planted
from hyperplant.runner.pool import run_trials
from hyperplant.stats.decision import decide, statistic_threshold, statistic_value

logger = logging.getLogger(__name__)


def _trial_pair(
    params: ProblemParams, statistic: StatisticKind, motif: BalancedMotif | None, seed: int, trial: int
) -> Tuple[float, float]:
    null_value = statistic_value(sample_null(params, seed, trial), params, statistic, motif)
    planted_value = statistic_value(sample_planted(params, seed, trial).Y, params, statistic, motif)
    return null_value, planted_value


def batch_means(values: np.ndarray, batches: int = BATCHES) -> Tuple[np.ndarray, np.ndarray]:
    """Per-batch means and (ddof=1) variances over contiguous trial blocks."""
    count = max(1, min(batches, len(values) // 2))
    blocks = np.array_split(values, count)
    return np.array([b.mean() for b in blocks]), np.array([b.var(ddof=1) for b in blocks])


def _se(batch_stats: np.ndarray) -> float:
    if len(batch_stats) < 2:
        return 0.0
    return float(batch_stats.std(ddof=1) / math.sqrt(len(batch_stats)))


def separation_functional(mean_null: float, mean_planted: float, var_null: float, var_planted: float) -> float:
    spread = max(var_null, var_planted)
    gap = abs(mean_planted - mean_null)
    if spread <= 0:
        return 0.0 if gap == 0 else math.inf
    return gap / math.sqrt(spread)


def estimate_separation(
    params: ProblemParams,
    statistic: StatisticKind,
    trials: int,
    seed: int,
    motif: BalancedMotif | None = None,
    workers: int | None = None,
) -> Tuple[SeparationReport, List[TrialRecord]]:
    """Monte Carlo means, variances and separation of a statistic under both models."""
    if trials < 2:
        raise InvalidArgumentError(f"trials >= 2 violated (trials={trials})")
    threshold = statistic_threshold(params, statistic, motif)

    # 1. Trials, each on its own child streams
    pairs = run_trials(partial(_trial_pair, params, statistic, motif, seed), trials, workers)
    null = np.array([a for a, _ in pairs], dtype=float)
    planted = np.array([b for _, b in pairs], dtype=float)

    # 2. Batch-means standard errors
    null_means, null_vars = batch_means(null)
    planted_means, planted_vars = batch_means(planted)
    batch_seps = np.array(
        [separation_functional(*row) for row in zip(null_means, planted_means, null_vars, planted_vars)]
    )

    records: List[TrialRecord] = []
    for t, (a, b) in enumerate(pairs):
        records.append(TrialRecord(trial=t, model=Model.NULL, statistic=a, decision=decide(a, threshold)))
        records.append(TrialRecord(trial=t, model=Model.PLANTED, statistic=b, decision=decide(b, threshold)))

    var_null, var_planted = float(null.var(ddof=1)), float(planted.var(ddof=1))
    report = SeparationReport(
        statistic=statistic,
        params=params,
        trials=trials,
        seed=seed,
        threshold=threshold,
        mean_null=float(null.mean()),
        mean_null_se=_se(null_means),
        mean_planted=float(planted.mean()),
        mean_planted_se=_se(planted_means),
        var_null=var_null,
        var_null_se=_se(null_vars),
        var_planted=var_planted,
        var_planted_se=_se(planted_vars),
        separation=separation_functional(float(null.mean()), float(planted.mean()), var_null, var_planted),
        separation_se=_se(batch_seps[np.isfinite(batch_seps)]),
        type_i_error=float(np.mean(null > threshold)),
        type_ii_error=float(np.mean(planted <= threshold)),
    )
    logger.debug(
        "separation %s n=%d trials=%d: %.4g +- %.2g", statistic.value, params.n, trials, report.separation,
        report.separation_se,
    )
    return report, records
