"""
Google Matrix Module
Builds the transition matrix P1, the dangling-patched stochastic matrix P2 and
the Google matrix G = alpha * P2^T + (1 - alpha) * v e^T
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.exceptions import InvalidAlpha, InvalidPersonalization, SizeCap
from core.settings import Defaults
from webgraph.graph_models import DirectedGraph

logger = logging.getLogger(__name__)

STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True)
class TransitionMatrix:
    """Row convention: entry (i, j) is the probability of stepping i -> j; dangling rows are zero"""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dangling_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.matrix.sum(axis=1) == 0)


@dataclass(frozen=True)
class StochasticMatrix:
    """Row-stochastic P2"""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GoogleMatrix:
    """Column-stochastic, strictly positive Google matrix with its parameters"""

    matrix: np.ndarray
    alpha: float
    v: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def uniform_vector(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def transition_matrix(g: DirectedGraph) -> TransitionMatrix:
    """P1[i, j] = 1/d(i) for every edge i -> j"""
    adj = g.adjacency()
    out_degree = adj.sum(axis=1)
    with np.errstate(divide='ignore', invalid='ignore'):
        p1 = np.where(out_degree[:, None] > 0, adj / out_degree[:, None], 0.0)
    return TransitionMatrix(p1)


def patch_dangling(p1: TransitionMatrix) -> StochasticMatrix:
    """Replace every zero row by the uniform row e/n"""
    p2 = p1.matrix.copy()
    dangling = p2.sum(axis=1) == 0
    if dangling.any():
        logger.debug("patching %d dangling rows", int(dangling.sum()))
        p2[dangling, :] = 1.0 / p2.shape[0]
    return StochasticMatrix(p2)


def validate_alpha(alpha: float) -> None:
    # alpha = 0 is admitted as the rank-one limit G = v e^T
    if not 0.0 <= alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in [0, 1), got {alpha}")


def validate_personalization(v: np.ndarray, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise InvalidPersonalization(f"personalization vector must have length {n}, got shape {v.shape}")
    if np.any(v <= 0):
        raise InvalidPersonalization("personalization vector must be strictly positive")
    if abs(v.sum() - 1.0) > STOCHASTIC_TOL:
        raise InvalidPersonalization(f"personalization vector sums to {v.sum():.17g}, not 1")
    return v


def google_matrix(p2: StochasticMatrix, alpha: float = Defaults.ALPHA,
                  v: Optional[np.ndarray] = None) -> GoogleMatrix:
    """G = alpha * P2^T + (1 - alpha) * v e^T"""
    validate_alpha(alpha)
    n = p2.n
    v = uniform_vector(n) if v is None else validate_personalization(v, n)
    g = alpha * p2.matrix.T + (1.0 - alpha) * np.outer(v, np.ones(n))
    return GoogleMatrix(g, alpha, v)


def google_matrix_of(g: DirectedGraph, alpha: float = Defaults.ALPHA,
                     v: Optional[np.ndarray] = None) -> GoogleMatrix:
    """Full P1 -> P2 -> G pipeline for a graph"""
    return google_matrix(patch_dangling(transition_matrix(g)), alpha, v)


def subdominant_eigenvalue(G: GoogleMatrix, cap: int = Defaults.SPECTRUM_CAP) -> float:
    """|lambda_2| of G, the second-largest eigenvalue modulus"""
    if G.n > cap:
        raise SizeCap(f"dense spectrum limited to n <= {cap}, got n={G.n}")
    if G.n == 1:
        return 0.0
    moduli = np.sort(np.abs(np.linalg.eigvals(G.matrix)))[::-1]
    return float(moduli[1])


def principal_eigenvector(G: GoogleMatrix) -> np.ndarray:
    """Dense eigensolver reference: eigenvector of the eigenvalue closest to 1, summed to 1"""
    values, vectors = np.linalg.eig(G.matrix)
    k = int(np.argmin(np.abs(values - 1.0)))
    vec = np.real(vectors[:, k])
    return vec / vec.sum()
