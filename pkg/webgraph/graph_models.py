"""
Graph Models Module
Random directed web-graph generators (preferential attachment, copying) and
the reverse / mixed / complete / undirected constructions built on them
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from core.exceptions import InvalidConfig, SizeMismatch
from core.settings import Defaults

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

MODELS = ('preferential_attachment', 'copying', 'complete', 'reverse_of', 'mixed', 'undirected')
BASE_MODELS = ('preferential_attachment', 'copying')


@dataclass(frozen=True)
class DirectedGraph:
    """Simple directed graph on nodes 0..n-1; immutable once built"""

    n: int
    edges: FrozenSet[Edge] = frozenset()
    allow_self_loops: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConfig(f"graph needs at least one node, got n={self.n}")
        edges = frozenset((int(s), int(d)) for s, d in self.edges)
        for src, dst in edges:
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise InvalidConfig(f"edge ({src}, {dst}) outside [0, {self.n})")
            if src == dst and not self.allow_self_loops:
                raise InvalidConfig(f"self-loop at {src} but allow_self_loops is false")
        object.__setattr__(self, 'edges', edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @property
    def out_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for src, _ in self.edges:
            deg[src] += 1
        return deg

    @property
    def in_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for _, dst in self.edges:
            deg[dst] += 1
        return deg

    @property
    def sparsity(self) -> int:
        """Maximum number of nonzeros in a row of the adjacency matrix"""
        return int(self.out_degrees.max()) if self.edges else 0

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix, A[i, j] = 1 for an edge i -> j"""
        adj = np.zeros((self.n, self.n), dtype=np.float64)
        if self.edges:
            src, dst = np.array(self.sorted_edges()).T
            adj[src, dst] = 1.0
        return adj

    def out_neighbors(self) -> List[List[int]]:
        """Sorted out-neighbor lists indexed by node"""
        neighbors: List[List[int]] = [[] for _ in range(self.n)]
        for src, dst in self.sorted_edges():
            neighbors[src].append(dst)
        return neighbors

    def with_edge(self, src: int, dst: int) -> 'DirectedGraph':
        """Copy of this graph with one more edge"""
        return replace(self, edges=self.edges | {(src, dst)})


@dataclass(frozen=True)
class GraphModelConfig:
    """Parameters of one random graph model; n may be overridden per ensemble size"""

    model: str = 'preferential_attachment'
    n: int = 64
    m: int = Defaults.EDGES_PER_VERTEX
    p_copy: float = Defaults.P_COPY
    d0: int = Defaults.COPY_OUT_DEGREE
    seed: int = 0
    mix_ratio: float = Defaults.MIX_RATIO
    base: str = 'preferential_attachment'
    with_self_loops: bool = True

    def validate(self) -> None:
        """Raise InvalidConfig on any parameter violation"""
        if self.model not in MODELS:
            raise InvalidConfig(f"unknown model '{self.model}', expected one of {', '.join(MODELS)}")
        if self.base not in BASE_MODELS:
            raise InvalidConfig(f"unknown base model '{self.base}'")
        if self.n < 1:
            raise InvalidConfig(f"n must be >= 1, got {self.n}")
        if self.m < 1:
            raise InvalidConfig(f"m must be >= 1, got {self.m}")
        if self.n < self.m and self._uses('preferential_attachment'):
            raise InvalidConfig(f"n={self.n} is smaller than m={self.m}")
        if not 0.0 <= self.p_copy < 1.0:
            raise InvalidConfig(f"p_copy must lie in [0, 1), got {self.p_copy}")
        if self.d0 < 1:
            raise InvalidConfig(f"d0 must be >= 1, got {self.d0}")
        if self.n < self.d0 + 1 and self._uses('copying'):
            raise InvalidConfig(f"copying model needs n >= d0 + 1 = {self.d0 + 1}, got n={self.n}")
        if self.mix_ratio <= 0:
            raise InvalidConfig(f"mix_ratio must be positive, got {self.mix_ratio}")

    def _uses(self, growth_model: str) -> bool:
        if self.model == growth_model:
            return True
        return self.model in ('reverse_of', 'mixed', 'undirected') and self.base == growth_model

    def with_size(self, n: int, seed: Optional[int] = None) -> 'GraphModelConfig':
        return replace(self, n=n, seed=self.seed if seed is None else seed)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)


def gen_preferential_attachment(cfg: GraphModelConfig) -> DirectedGraph:
    """Grow a graph one vertex at a time, attaching m edges by total degree"""
    if cfg.m < 1 or cfg.n < cfg.m:
        raise InvalidConfig(f"preferential attachment needs n >= m >= 1, got n={cfg.n}, m={cfg.m}")
    rng = _rng(cfg.seed)
    degree = np.zeros(cfg.n, dtype=np.float64)
    edges = set()

    for t in range(1, cfg.n):
        for _ in range(cfg.m):
            existing = degree[:t]
            total = existing.sum()
            if total == 0:
                # Nothing has degree yet: attach uniformly
                target = int(rng.integers(t))
            else:
                # The new vertex competes with weight (own degree + 1)
                weights = np.cumsum(np.append(existing, degree[t] + 1.0))
                target = int(np.searchsorted(weights, rng.random() * weights[-1], side='right'))
                if target == t:
                    target = int(np.searchsorted(weights, rng.random() * weights[-1], side='right'))
                if target == t:
                    continue
            if (t, target) in edges:
                continue
            edges.add((t, target))
            degree[t] += 1
            degree[target] += 1

    return DirectedGraph(cfg.n, frozenset(edges))


def _ring_edges(size: int, out_degree: int) -> List[Edge]:
    return [(i, (i + k) % size) for i in range(size) for k in range(1, out_degree + 1)]


def gen_copying(cfg: GraphModelConfig) -> DirectedGraph:
    """Copying model started from a directed d0-regular ring on d0 + 1 nodes"""
    if cfg.d0 < 1 or cfg.n < cfg.d0 + 1 or not 0.0 <= cfg.p_copy < 1.0:
        raise InvalidConfig(f"copying model needs n >= d0 + 1, d0 >= 1 and 0 <= p_copy < 1 "
                            f"(n={cfg.n}, d0={cfg.d0}, p_copy={cfg.p_copy})")
    rng = _rng(cfg.seed)
    start = cfg.d0 + 1
    out: List[List[int]] = [[] for _ in range(cfg.n)]
    for src, dst in _ring_edges(start, cfg.d0):
        out[src].append(dst)

    for t in range(start, cfg.n):
        copying_vertex = int(rng.integers(t))
        targets = []
        for neighbor in out[copying_vertex]:
            if rng.random() < cfg.p_copy:
                neighbor = int(rng.integers(t))
            if neighbor not in targets:
                targets.append(neighbor)
        out[t] = targets

    edges = frozenset((src, dst) for src, targets in enumerate(out) for dst in targets)
    return DirectedGraph(cfg.n, edges)


def reverse_graph(g: DirectedGraph) -> DirectedGraph:
    """Flip every edge; node count is kept"""
    return DirectedGraph(g.n, frozenset((dst, src) for src, dst in g.edges), g.allow_self_loops)


def mix_graphs(g_a: DirectedGraph, g_b: DirectedGraph) -> DirectedGraph:
    """Union of edge sets (boolean OR of the adjacency matrices)"""
    if g_a.n != g_b.n:
        raise SizeMismatch(f"cannot mix graphs with {g_a.n} and {g_b.n} nodes")
    return DirectedGraph(g_a.n, g_a.edges | g_b.edges, g_a.allow_self_loops or g_b.allow_self_loops)


def complete_graph(n: int, with_self_loops: bool = True) -> DirectedGraph:
    """All ordered pairs; diagonal only when with_self_loops"""
    edges = frozenset((i, j) for i in range(n) for j in range(n) if with_self_loops or i != j)
    return DirectedGraph(n, edges, allow_self_loops=with_self_loops)


def empty_graph(n: int) -> DirectedGraph:
    return DirectedGraph(n, frozenset())


def _grow(cfg: GraphModelConfig, base: str, seed: int, scale: float = 1.0) -> DirectedGraph:
    if base == 'copying':
        d0 = min(max(1, math.ceil(scale * cfg.d0)), cfg.n - 1)
        return gen_copying(replace(cfg, seed=seed, d0=d0))
    m = max(1, math.ceil(scale * cfg.m))
    return gen_preferential_attachment(replace(cfg, seed=seed, m=min(m, cfg.n)))


def _substream(seed: int, tag: int) -> int:
    mixed = np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, tag]).generate_state(1, np.uint64)[0]
    return int(mixed)


def max_degree_ratio(part_a: DirectedGraph, part_b: DirectedGraph) -> float:
    """Max out-degree of the out-law part over max in-degree of the in-law part"""
    max_in = int(part_a.in_degrees.max()) if part_a.edges else 0
    max_out = int(part_b.out_degrees.max()) if part_b.edges else 0
    return max_out / max_in if max_in else math.inf


def mixed_parts(cfg: GraphModelConfig) -> Tuple[DirectedGraph, DirectedGraph]:
    """The in-law part G_A and the out-law part G_B of a mixed build

    G_B is a denser growth graph, reversed so its hubs link outward. Its
    density is rescaled by target/measured ratio and redrawn from a fresh
    substream until max_degree_ratio lies within MIX_RATIO_TOL of mix_ratio;
    after MIX_ATTEMPTS draws the closest one is kept.
    """
    part_a = _grow(cfg, cfg.base, _substream(cfg.seed, 1))
    scale = cfg.mix_ratio
    best, best_miss = None, math.inf

    for attempt in range(Defaults.MIX_ATTEMPTS):
        part_b = reverse_graph(_grow(cfg, cfg.base, _substream(cfg.seed, 2 + attempt), scale=scale))
        ratio = max_degree_ratio(part_a, part_b)
        miss = abs(ratio / cfg.mix_ratio - 1.0)
        if best is None or miss < best_miss:
            best, best_miss = part_b, miss
        if miss <= Defaults.MIX_RATIO_TOL or ratio == 0 or not math.isfinite(ratio):
            break
        scale *= cfg.mix_ratio / ratio

    if best_miss > Defaults.MIX_RATIO_TOL:
        logger.debug("mixed build n=%d seed=%d: degree ratio off target by %.0f%% after %d draws",
                     cfg.n, cfg.seed, 100 * best_miss, attempt + 1)
    return part_a, best


def generate_graph(cfg: GraphModelConfig) -> DirectedGraph:
    """Build the graph a config describes; deterministic in (config, seed)"""
    cfg.validate()
    if cfg.model == 'preferential_attachment':
        return gen_preferential_attachment(cfg)
    if cfg.model == 'copying':
        return gen_copying(cfg)
    if cfg.model == 'complete':
        return complete_graph(cfg.n, cfg.with_self_loops)
    if cfg.model == 'reverse_of':
        return reverse_graph(_grow(cfg, cfg.base, cfg.seed))
    if cfg.model == 'undirected':
        g = _grow(cfg, cfg.base, cfg.seed)
        return mix_graphs(g, reverse_graph(g))
    part_a, part_b = mixed_parts(cfg)
    logger.debug("mixed build n=%d: degree ratio %.2f", cfg.n, max_degree_ratio(part_a, part_b))
    return mix_graphs(part_a, part_b)
