"""
SWAP-test Module
Fidelity comparison of two PageRank states through simulated ancilla measurements
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from core.exceptions import DimensionMismatch, InvalidParam
from core.settings import Defaults
from webgraph.graph_models import DirectedGraph

from .sampling import QuantumPageRankState

logger = logging.getLogger(__name__)

StateInput = Union[QuantumPageRankState, np.ndarray]


@dataclass(frozen=True)
class SwapTestResult:
    shots: int
    zero_outcomes: int
    fidelity_estimate: float
    exact_fidelity: Optional[float] = None


def _vector(state: StateInput) -> np.ndarray:
    return np.asarray(getattr(state, 'amplitudes', state), dtype=np.complex128).reshape(-1)


def swap_test(state_a: StateInput, state_b: StateInput, shots: int = Defaults.SWAP_SHOTS,
              seed: int = 0) -> SwapTestResult:
    """Ancilla reads 0 with probability (1 + F) / 2, F = |<A|B>|^2

    The estimate 2 * zeros / shots - 1 is clipped at 0, which biases it
    upward when F is close to 0.
    """
    a, b = _vector(state_a), _vector(state_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"states have dimensions {a.size} and {b.size}")
    if shots < 1:
        raise InvalidParam(f"shots must be >= 1, got {shots}")

    fidelity = min(1.0, float(abs(np.vdot(a, b)) ** 2))
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    zeros = int(rng.binomial(shots, (1.0 + fidelity) / 2.0))
    estimate = max(0.0, 2.0 * zeros / shots - 1.0)
    return SwapTestResult(shots, zeros, estimate, fidelity)


def format_swap_result(result: SwapTestResult) -> str:
    """Single key=value line: shots, zeros, f_hat, f_exact"""
    exact = 'nan' if result.exact_fidelity is None else repr(float(result.exact_fidelity))
    return (f"shots={result.shots} zeros={result.zero_outcomes} "
            f"f_hat={float(result.fidelity_estimate)!r} f_exact={exact}")


def perturb_graph(g: DirectedGraph, seed: int = 0) -> DirectedGraph:
    """Add one uniformly chosen absent edge (self-loops only if the graph allows them)"""
    absent = [(i, j) for i in range(g.n) for j in range(g.n)
              if (i, j) not in g.edges and (g.allow_self_loops or i != j)]
    if not absent:
        raise InvalidParam("graph is already complete; no edge can be added")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    src, dst = absent[int(rng.integers(len(absent)))]
    logger.debug("perturbing graph with edge %d -> %d", src, dst)
    return g.with_edge(src, dst)
