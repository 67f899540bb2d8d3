"""
Order-preserving worker pool used by ensembles and Monte Carlo walks
"""

import logging
from multiprocessing import Pool
from typing import Callable, List, Sequence, TypeVar

from .settings import worker_count

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int = None) -> List[R]:
    """Map a picklable top-level function over items; results come back in input order"""
    workers = min(worker_count(workers), max(len(items), 1))
    if workers == 1:
        return [func(item) for item in items]

    logger.debug("Dispatching %d tasks to %d workers", len(items), workers)
    with Pool(processes=workers) as pool:
        return pool.map(func, items, chunksize=max(1, len(items) // (4 * workers)))
