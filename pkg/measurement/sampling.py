"""
Sampling Module
Site measurements on the quantum PageRank state |pi>, Hoeffding shot budgets,
top-k extraction and the quantum/classical rank cost model
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from core.exceptions import DegenerateScale, InvalidParam
from core.settings import Defaults
from googlerank.pagerank import PageRankVector

logger = logging.getLogger(__name__)

PROBABILITY_TOL = 1e-12
GAMMA_TOL = 1e-12


@dataclass(frozen=True)
class QuantumPageRankState:
    """Amplitudes p / ||p||_2; measuring site i has probability pi_i = p_i^2 / ||p||_2^2"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.float64)
        if np.any(amps < 0):
            raise InvalidParam("PageRank state amplitudes must be nonnegative")
        if abs(float(np.sum(amps ** 2)) - 1.0) > PROBABILITY_TOL * max(1, amps.size):
            raise InvalidParam("PageRank state is not normalized")
        object.__setattr__(self, 'amplitudes', amps)

    @property
    def n(self) -> int:
        return len(self.amplitudes)

    @property
    def probabilities(self) -> np.ndarray:
        pi = self.amplitudes ** 2
        return pi / pi.sum()

    @classmethod
    def from_pagerank(cls, p: Union[PageRankVector, np.ndarray]) -> 'QuantumPageRankState':
        vec = np.asarray(getattr(p, 'p', p), dtype=np.float64)
        return cls(vec / np.linalg.norm(vec))


def quantum_state_from_pagerank(p: Union[PageRankVector, np.ndarray]) -> QuantumPageRankState:
    return QuantumPageRankState.from_pagerank(p)


@dataclass(frozen=True)
class MeasurementRecord:
    """Per-site outcome counts of M site measurements"""

    shots: int
    counts: np.ndarray
    seed: int

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'site': np.arange(len(self.counts)), 'count': self.counts})


def sample_sites(state: QuantumPageRankState, shots: int, seed: int = 0) -> MeasurementRecord:
    """Draw `shots` i.i.d. sites from pi; counts are deterministic per seed"""
    if shots < 1:
        raise InvalidParam(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    counts = rng.multinomial(shots, state.probabilities)
    return MeasurementRecord(shots, counts.astype(np.int64), seed)


def hoeffding_shots(e: float, confidence: float = Defaults.CONFIDENCE) -> int:
    """Two-sided Hoeffding budget M = ceil(ln(2 / (1 - confidence)) / (2 e^2))"""
    if not 0.0 < e < 1.0:
        raise InvalidParam(f"additive error e must lie in (0, 1), got {e}")
    if not 0.0 < confidence < 1.0:
        raise InvalidParam(f"confidence must lie in (0, 1), got {confidence}")
    return math.ceil(math.log(2.0 / (1.0 - confidence)) / (2.0 * e * e))


def estimate_top_k(record: Union[MeasurementRecord, QuantumPageRankState],
                   k: Optional[int] = None) -> List[int]:
    """Sites ordered by estimated pi, largest first; ties go to the lower site index

    A QuantumPageRankState may be passed instead of a record to rank by the
    exact probabilities.
    """
    if isinstance(record, QuantumPageRankState):
        weights = record.probabilities
    else:
        weights = record.frequencies
    n = len(weights)
    k = max(1, math.ceil(math.log(n))) if k is None else k
    if not 1 <= k <= n:
        raise InvalidParam(f"k must lie in [1, {n}], got {k}")
    order = np.lexsort((np.arange(n), -weights))
    return [int(i) for i in order[:k]]


@dataclass(frozen=True)
class RankCostReport:
    """gamma_i with pi_i = n^-gamma_i and the cost exponents it implies"""

    gamma: np.ndarray

    @property
    def quantum_exponent(self) -> np.ndarray:
        return 2.0 * self.gamma - 1.0

    @property
    def classical_exponent(self) -> np.ndarray:
        return self.gamma

    @property
    def speedup(self) -> np.ndarray:
        return self.gamma < 1.0 - GAMMA_TOL

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'site': np.arange(len(self.gamma)),
            'gamma': self.gamma,
            'quantum_exponent': self.quantum_exponent,
            'classical_exponent': self.classical_exponent,
            'speedup': self.speedup,
        })


def rank_cost_report(state: QuantumPageRankState, n: Optional[int] = None) -> RankCostReport:
    n = state.n if n is None else n
    if n < 2:
        raise DegenerateScale(f"rank exponents need n >= 2, got {n}")
    pi = state.probabilities
    if np.any(pi <= 0):
        raise InvalidParam("rank exponents need every pi_i > 0")
    return RankCostReport(-np.log(pi) / math.log(n))
