"""
PageRank Module
Power iteration, Monte Carlo random-walk estimation and inverse PageRank
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core.exceptions import InvalidConfig, InvalidParam, NoConvergence
from core.settings import Defaults
from core.workers import parallel_map
from webgraph.graph_models import DirectedGraph, reverse_graph

from .google_matrix import GoogleMatrix, google_matrix_of, uniform_vector, validate_personalization

logger = logging.getLogger(__name__)

MCMC_BLOCK = 4096


@dataclass(frozen=True)
class PageRankVector:
    """Probability vector p with the residual ||Gp - p||_1 it was accepted at"""

    p: np.ndarray
    residual: float
    iterations: int

    @property
    def n(self) -> int:
        return len(self.p)

    def l2_normalized(self) -> np.ndarray:
        return self.p / np.linalg.norm(self.p)


def expected_power_iterations(tol: float, alpha: float = Defaults.ALPHA) -> int:
    """ceil(ln tol / ln alpha): iterations needed when the error contracts by alpha per step"""
    if not 0 < tol < 1 or not 0 < alpha < 1:
        raise InvalidParam("need 0 < tol < 1 and 0 < alpha < 1")
    return math.ceil(math.log(tol) / math.log(alpha))


def _start_vector(p0: np.ndarray, n: int) -> np.ndarray:
    p0 = np.array(p0, dtype=np.float64)
    if p0.shape != (n,) or np.any(p0 < 0) or abs(p0.sum() - 1.0) > 1e-12:
        raise InvalidParam(f"p0 must be a probability vector of length {n}")
    return p0


def pagerank_power(G: GoogleMatrix, p0: Optional[np.ndarray] = None, tol: float = Defaults.PAGERANK_TOL,
                   max_iter: int = Defaults.PAGERANK_MAX_ITER) -> PageRankVector:
    """Iterate p <- Gp until ||Gp - p||_1 <= tol"""
    if tol <= 0:
        raise InvalidParam(f"tol must be positive, got {tol}")
    p = uniform_vector(G.n) if p0 is None else _start_vector(p0, G.n)

    residual = math.inf
    for iteration in range(max_iter + 1):
        q = G.matrix @ p
        residual = float(np.abs(q - p).sum())
        if residual <= tol:
            logger.debug("power iteration converged after %d steps (residual %.3e)", iteration, residual)
            return PageRankVector(p / p.sum(), residual, iteration)
        p = q / q.sum()

    raise NoConvergence(f"residual {residual:.3e} > tol {tol:.3e} after {max_iter} iterations",
                        residual=residual, iterations=max_iter)


def pagerank(g: DirectedGraph, alpha: float = Defaults.ALPHA, v: Optional[np.ndarray] = None,
             tol: float = Defaults.PAGERANK_TOL) -> PageRankVector:
    return pagerank_power(google_matrix_of(g, alpha, v), tol=tol)


def inverse_pagerank(g: DirectedGraph, alpha: float = Defaults.ALPHA, v: Optional[np.ndarray] = None,
                     tol: float = Defaults.PAGERANK_TOL) -> PageRankVector:
    """PageRank of the edge-reversed graph"""
    return pagerank(reverse_graph(g), alpha, v, tol)


def default_walk_length(alpha: float) -> int:
    return 10 * math.ceil(1.0 / (1.0 - alpha))


def _walk_block(task: Tuple) -> np.ndarray:
    """Run one block of walks from its own PRNG stream; returns terminal counts"""
    seed, block, num_walks, alpha, max_len, v, indptr, targets = task
    n = len(v)
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, block])
    out_degree = np.diff(indptr)

    position = rng.choice(n, size=num_walks, p=v)
    terminal = np.empty(num_walks, dtype=np.int64)
    active = np.arange(num_walks)

    for _ in range(max_len):
        if active.size == 0:
            break
        here = position[active]
        stop = rng.random(active.size) >= alpha
        terminal[active[stop]] = here[stop]
        active, here = active[~stop], here[~stop]

        degree = out_degree[here]
        jump = rng.random(active.size)
        # Dangling nodes jump to a uniform node
        step = (jump * n).astype(np.int64)
        follow = degree > 0
        offsets = indptr[here[follow]] + (jump[follow] * degree[follow]).astype(np.int64)
        step[follow] = targets[offsets]
        position[active] = step

    # Truncated walks terminate where they stand
    terminal[active] = position[active]
    return np.bincount(terminal, minlength=n)


def pagerank_mcmc(g: DirectedGraph, alpha: float = Defaults.ALPHA, num_walks: int = 100000,
                  max_len: Optional[int] = None, seed: int = 0, v: Optional[np.ndarray] = None,
                  workers: Optional[int] = None) -> PageRankVector:
    """Terminal-visit Monte Carlo estimate of PageRank

    Each walk starts at a v-distributed node, stops with probability 1 - alpha
    per step and otherwise follows a uniform out-link. Walks are processed in
    fixed blocks, each with a stream derived from (seed, block index), so the
    estimate does not depend on the number of workers.
    """
    if num_walks < 1:
        raise InvalidConfig(f"num_walks must be >= 1, got {num_walks}")
    if not 0.0 < alpha < 1.0:
        raise InvalidConfig(f"alpha must lie in (0, 1), got {alpha}")
    v = uniform_vector(g.n) if v is None else validate_personalization(v, g.n)
    max_len = default_walk_length(alpha) if max_len is None else max_len
    if max_len < 0:
        raise InvalidConfig(f"max_len must be >= 0, got {max_len}")

    neighbors = g.out_neighbors()
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(nb) for nb in neighbors])
    targets = np.array([t for nb in neighbors for t in nb], dtype=np.int64)

    tasks: List[Tuple] = []
    for block, start in enumerate(range(0, num_walks, MCMC_BLOCK)):
        size = min(MCMC_BLOCK, num_walks - start)
        tasks.append((seed, block, size, alpha, max_len, v, indptr, targets))

    counts = np.zeros(g.n, dtype=np.int64)
    for block_counts in parallel_map(_walk_block, tasks, workers):
        counts += block_counts

    p_hat = counts / num_walks
    logger.info("MCMC estimate from %d walks in %d blocks", num_walks, len(tasks))
    return PageRankVector(p_hat, math.nan, num_walks)
