"""
Settings Module
Default numerical parameters and environment-driven worker configuration
"""

import logging
import os

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = 'ADIARANK_THREADS'


class Defaults:
    """Default parameters shared by every module"""

    # Google matrix
    ALPHA = 0.85
    PAGERANK_TOL = 1e-12
    PAGERANK_MAX_ITER = 10000
    SPECTRUM_CAP = 2048

    # Graph models
    EDGES_PER_VERTEX = 2
    COPY_OUT_DEGREE = 3
    P_COPY = 0.5
    MIX_RATIO = 3.0
    MIX_RATIO_TOL = 0.1
    MIX_ATTEMPTS = 12
    DEGREE_FIT_MIN = 5

    # Spectral scans
    SCAN_GRID = 64
    REFINE_TOL = 1e-6
    DENSE_EIGEN_CAP = 4096
    ITERATIVE_EIGEN_TOL = 1e-10
    DEGENERATE_GAP = 1e-12

    # Evolution
    STEPS_PER_UNIT = 10
    EVOLUTION_CAP = 256
    STEP_CHECK_TOL = 1e-4
    FULL_SPACE_CAP = 14

    # Ensembles
    EVOLUTION_TRIALS = 100
    SPECTRAL_TRIALS = 1000
    MAX_EXCLUDED_FRACTION = 0.01

    # Measurement
    CONFIDENCE = 0.95
    SWAP_SHOTS = 2000

    @classmethod
    def as_dict(cls) -> dict:
        """All defaults as a plain dictionary"""
        return {k: v for k, v in vars(cls).items() if k.isupper()}


def worker_count(requested: int = None) -> int:
    """Resolve the worker count: explicit request, else ADIARANK_THREADS, else CPU count"""
    if requested is None:
        raw = os.environ.get(THREADS_ENV_VAR, '0').strip() or '0'
        try:
            requested = int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
            requested = 0
    if requested <= 0:
        requested = os.cpu_count() or 1
    return requested
