"""
Hamiltonian Module
Non-local PageRank Hamiltonians h(G) = (I - G)^T (I - G) and their linear interpolation
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.exceptions import DimensionMismatch, InvalidParam, SOutOfRange
from core.settings import Defaults
from googlerank.google_matrix import GoogleMatrix, google_matrix_of
from webgraph.graph_models import complete_graph

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class HermitianOperator:
    """Dense real symmetric matrix"""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParam(f"operator must be square, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max())) if m.size else 1.0
        if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_TOL * scale):
            raise InvalidParam("operator is not symmetric")
        object.__setattr__(self, 'matrix', m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def norm(self) -> float:
        """Spectral norm (largest eigenvalue modulus)"""
        values = self.eigenvalues()
        return float(np.max(np.abs(values))) if values.size else 0.0

    def is_psd(self, tol: float = PSD_TOL) -> bool:
        return bool(self.eigenvalues()[0] >= -tol)


@dataclass(frozen=True)
class AdiabaticProblem:
    """Endpoints of h(s) = (1 - s) h_i + s h_p"""

    h_i: HermitianOperator
    h_p: HermitianOperator

    def __post_init__(self):
        if self.h_i.n != self.h_p.n:
            raise DimensionMismatch(f"h_i is {self.h_i.n}x{self.h_i.n} but h_p is {self.h_p.n}x{self.h_p.n}")

    @property
    def n(self) -> int:
        return self.h_i.n


def _pagerank_hamiltonian(G: np.ndarray) -> HermitianOperator:
    m = np.eye(G.shape[0]) - G
    h = m.T @ m
    return HermitianOperator(0.5 * (h + h.T))


def problem_hamiltonian(G: GoogleMatrix) -> HermitianOperator:
    """h_p = (I - G)^T (I - G); its ground state is p / ||p||_2 with energy 0"""
    return _pagerank_hamiltonian(G.matrix)


def initial_hamiltonian(n: int, alpha: float = Defaults.ALPHA, v: Optional[np.ndarray] = None,
                        with_self_loops: bool = True) -> HermitianOperator:
    """h_i from the Google matrix of the complete graph

    With self-loops and uniform v this is the projector I - ee^T/n, whose
    ground state is the uniform superposition and whose gap is exactly 1.
    """
    if n < 1:
        raise InvalidParam(f"n must be >= 1, got {n}")
    G_c = google_matrix_of(complete_graph(n, with_self_loops), alpha, v)
    return _pagerank_hamiltonian(G_c.matrix)


def build_problem(G: GoogleMatrix, complete_loops: bool = True) -> AdiabaticProblem:
    """Pair the problem Hamiltonian of G with the matching complete-graph start"""
    h_i = initial_hamiltonian(G.n, G.alpha, None, with_self_loops=complete_loops)
    return AdiabaticProblem(h_i, problem_hamiltonian(G))


def interpolate(prob: AdiabaticProblem, s: float) -> HermitianOperator:
    """h(s) = (1 - s) h_i + s h_p"""
    if not 0.0 <= s <= 1.0:
        raise SOutOfRange(f"s must lie in [0, 1], got {s}")
    return HermitianOperator((1.0 - s) * prob.h_i.matrix + s * prob.h_p.matrix)


def lambda_norm(prob: AdiabaticProblem) -> float:
    """||h_p - h_i||, equal to max_s ||dh/ds|| since the derivative is constant"""
    return HermitianOperator(prob.h_p.matrix - prob.h_i.matrix).norm()
