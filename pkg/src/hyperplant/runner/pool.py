import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, TypeVar

from hyperplant.config import WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_trials(trial_fn: Callable[[int], T], trials: int, workers: int | None = None) -> List[T]:
    """Evaluate trial_fn(0..trials-1); results come back in trial order for any worker count.

    trial_fn must be picklable (a module-level function or a functools.partial of one)
    and must derive its randomness from the trial index alone.
    """
    workers = WORKERS if workers is None else max(1, workers)
    if workers == 1 or trials < 2:
        return [trial_fn(t) for t in range(trials)]

    chunk = max(1, trials // (4 * workers))
    logger.debug("running %d trials on %d workers (chunk %d)", trials, workers, chunk)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(trial_fn, range(trials), chunksize=chunk))
