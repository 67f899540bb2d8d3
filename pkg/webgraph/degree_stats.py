"""
Degree statistics: in/out degree histograms and power-law exponent fits
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from core.exceptions import InsufficientData, InvalidParam
from core.settings import Defaults

from .graph_models import DirectedGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeHistogram:
    """Number of nodes N(d) having degree d in one direction"""

    direction: str
    counts: Dict[int, int]

    @property
    def total_nodes(self) -> int:
        return sum(self.counts.values())

    def degree_sum(self) -> int:
        return sum(d * c for d, c in self.counts.items())


def degree_histogram(g: DirectedGraph, direction: str = 'in') -> DegreeHistogram:
    """Histogram of in- or out-degrees; counts sum to n"""
    if direction == 'in':
        degrees = g.in_degrees
    elif direction == 'out':
        degrees = g.out_degrees
    else:
        raise InvalidParam(f"direction must be 'in' or 'out', got '{direction}'")
    return DegreeHistogram(direction, dict(sorted(Counter(int(d) for d in degrees).items())))


def merge_histograms(histograms) -> DegreeHistogram:
    """Pool the histograms of an ensemble of graphs"""
    total: Counter = Counter()
    direction = None
    for hist in histograms:
        direction = direction or hist.direction
        total.update(hist.counts)
    return DegreeHistogram(direction or 'in', dict(sorted(total.items())))


def fit_degree_exponent(hist: DegreeHistogram, d_min: int = Defaults.DEGREE_FIT_MIN) -> Tuple[float, float]:
    """Power-law exponent from the tail of the complementary CDF; returns (exponent, r_squared)

    Fits ln P(D >= d) against ln d at every observed degree d >= d_min. A law
    N(d) ~ d^-k has a CCDF slope of 1 - k, so N(d) ~ d^-3 reports +3.
    """
    degrees = np.array(sorted(hist.counts), dtype=np.int64)
    counts = np.array([hist.counts[d] for d in degrees], dtype=np.float64)
    if counts.sum() <= 0:
        raise InsufficientData("degree histogram is empty")
    # P(D >= d) at each observed degree
    ccdf = np.cumsum(counts[::-1])[::-1] / counts.sum()

    keep = (degrees >= max(d_min, 1)) & (counts > 0)
    if np.count_nonzero(keep) < 3:
        raise InsufficientData(f"need at least 3 distinct degrees >= {d_min}, have {np.count_nonzero(keep)}")

    log_d = np.log(degrees[keep].astype(np.float64))
    log_p = np.log(ccdf[keep])
    design = np.column_stack([np.ones_like(log_d), log_d])
    coeffs, _, _, _ = np.linalg.lstsq(design, log_p, rcond=None)
    residuals = log_p - design @ coeffs
    ss_tot = float(np.sum((log_p - log_p.mean()) ** 2))
    ss_res = float(np.sum(residuals ** 2))
    r_squared = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)

    exponent = 1.0 - float(coeffs[1])
    logger.debug("CCDF fit over %d degrees: exponent %.3f, R^2 %.3f",
                 int(np.count_nonzero(keep)), exponent, r_squared)
    return exponent, r_squared
