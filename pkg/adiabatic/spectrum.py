"""
Spectrum Module
Instantaneous gaps of h(s), the minimum-gap scan and ground states
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigsh

from core.exceptions import DegenerateGround, EigenFailure, InvalidParam
from core.settings import Defaults

from .states import QuantumState
from .hamiltonian import AdiabaticProblem, HermitianOperator, interpolate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralScan:
    """Gap samples on a uniform grid plus the refined minimum"""

    grid: List[Tuple[float, float]]
    delta_min: float
    s_star: float

    @property
    def degenerate(self) -> bool:
        return self.delta_min < Defaults.DEGENERATE_GAP


def lowest_eigenpairs(h: HermitianOperator, with_vectors: bool = False):
    """Two smallest eigenvalues (and vectors); dense up to the cap, Lanczos above it"""
    if h.n < 2:
        raise EigenFailure(f"a gap needs at least two levels, operator has n={h.n}")
    try:
        if h.n <= Defaults.DENSE_EIGEN_CAP:
            if with_vectors:
                return eigh(h.matrix, subset_by_index=[0, 1])
            return eigh(h.matrix, subset_by_index=[0, 1], eigvals_only=True)
        values, vectors = eigsh(h.matrix, k=2, which='SA', tol=Defaults.ITERATIVE_EIGEN_TOL)
        order = np.argsort(values)
        return (values[order], vectors[:, order]) if with_vectors else values[order]
    except (LinAlgError, ArpackError, ArpackNoConvergence) as e:
        raise EigenFailure(f"eigensolver failed for n={h.n}: {e}") from e


def gap_at(prob: AdiabaticProblem, s: float) -> float:
    """Delta(s) = E1(s) - E0(s)"""
    values = lowest_eigenpairs(interpolate(prob, s))
    gap = float(values[1] - values[0])
    if gap < Defaults.DEGENERATE_GAP:
        logger.warning("degenerate ground level at s=%.6f (gap %.3e)", s, gap)
    return max(gap, 0.0)


def gap_scan(prob: AdiabaticProblem, grid_points: int = Defaults.SCAN_GRID,
             refine_tol: float = Defaults.REFINE_TOL) -> SpectralScan:
    """Uniform scan of Delta(s) followed by a bounded refinement around the smallest sample"""
    if grid_points < 8:
        raise InvalidParam(f"grid_points must be >= 8, got {grid_points}")
    s_values = np.linspace(0.0, 1.0, grid_points)
    gaps = [gap_at(prob, float(s)) for s in s_values]

    k = int(np.argmin(gaps))
    delta_min, s_star = gaps[k], float(s_values[k])
    lo = float(s_values[max(k - 1, 0)])
    hi = float(s_values[min(k + 1, grid_points - 1)])

    # Bounded Brent search: golden-section steps with parabolic acceleration
    result = minimize_scalar(lambda s: gap_at(prob, s), bounds=(lo, hi), method='bounded',
                             options={'xatol': refine_tol})
    if result.fun < delta_min:
        delta_min, s_star = float(result.fun), float(result.x)

    logger.debug("gap scan n=%d: delta=%.6g at s=%.6f", prob.n, delta_min, s_star)
    return SpectralScan([(float(s), g) for s, g in zip(s_values, gaps)], delta_min, s_star)


def ground_state(h: HermitianOperator) -> QuantumState:
    """Unit eigenvector of the smallest eigenvalue, largest-magnitude entry made positive"""
    if h.n == 1:
        return QuantumState(np.ones(1, dtype=np.complex128))
    values, vectors = lowest_eigenpairs(h, with_vectors=True)
    if values[1] - values[0] < Defaults.DEGENERATE_GAP:
        raise DegenerateGround(f"ground level is degenerate (gap {values[1] - values[0]:.3e})")
    vec = vectors[:, 0]
    vec = vec / np.linalg.norm(vec)
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    return QuantumState(vec.astype(np.complex128))
