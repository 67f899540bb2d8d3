"""
Ensemble Module
Seeded trial ensembles over graph sizes: minimum gaps and lambda, adiabatic
error against total time, run-time bound verification and the measurement
layer experiments. Every trial draws its seed from split_seed(master, n, trial)
and results are reduced in trial order, so tables do not depend on the
number of workers.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from adiabatic import (Schedule, build_problem, evolve, fidelity_and_error, gap_scan,
                       ground_state, lambda_norm, predicted_runtime)
from core.exceptions import EigenFailure, ExcessiveExclusions, InvalidConfig, InvalidParam
from core.settings import Defaults
from core.workers import parallel_map
from googlerank import google_matrix_of, pagerank_power
from measurement import (QuantumPageRankState, hoeffding_shots, perturb_graph, sample_sites,
                         swap_test)
from webgraph import GraphModelConfig, generate_graph

from .seeds import split_seed

logger = logging.getLogger(__name__)

RUNTIME_VERIFY_MAX_N = 20
RUNTIME_EXPONENTS = (2, 3)

SCALING_COLUMNS = ['n', 'delta_ave', 'delta_stderr', 'inv_delta_ave', 'inv_delta_stderr',
                   'inv_of_ave', 'lambda_ave', 'lambda_stderr', 'trials', 'excluded']


@dataclass(frozen=True)
class EnsembleSpec:
    """Graph family template (n left free), sizes, trials and scan settings"""

    model: GraphModelConfig = field(default_factory=lambda: GraphModelConfig(model='mixed'))
    sizes: Tuple[int, ...] = (4, 8, 16, 32)
    trials: int = Defaults.SPECTRAL_TRIALS
    seed: int = 0
    alpha: float = Defaults.ALPHA
    grid_points: int = Defaults.SCAN_GRID
    refine_tol: float = Defaults.REFINE_TOL

    def __post_init__(self):
        object.__setattr__(self, 'sizes', tuple(int(n) for n in self.sizes))

    def validate(self) -> None:
        if not self.sizes:
            raise InvalidConfig("ensemble needs at least one size")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise InvalidConfig(f"sizes must be strictly increasing, got {list(self.sizes)}")
        if self.trials < 1:
            raise InvalidConfig(f"trials must be >= 1, got {self.trials}")
        if not 0.0 <= self.alpha < 1.0:
            raise InvalidConfig(f"alpha must lie in [0, 1), got {self.alpha}")
        for n in self.sizes:
            self.model.with_size(n).validate()

    def graph_config(self, n: int, trial: int) -> GraphModelConfig:
        return self.model.with_size(n, seed=split_seed(self.seed, n, trial))


def _stderr(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _check_exclusions(excluded: int, total: int) -> None:
    if excluded and excluded > Defaults.MAX_EXCLUDED_FRACTION * total:
        raise ExcessiveExclusions(f"{excluded} of {total} trials excluded "
                                  f"(limit {Defaults.MAX_EXCLUDED_FRACTION:.0%})")
    if excluded:
        logger.warning("%d of %d trials excluded from the averages", excluded, total)


# ─── Gap ensembles ───────────────────────────────────────────────────────────

def _gap_trial(task: Tuple[EnsembleSpec, int, int]) -> Optional[Tuple[float, float]]:
    """(delta, lambda) of one realization, or None if its eigensolves failed"""
    spec, n, trial = task
    g = generate_graph(spec.graph_config(n, trial))
    prob = build_problem(google_matrix_of(g, spec.alpha))
    try:
        scan = gap_scan(prob, spec.grid_points, spec.refine_tol)
    except EigenFailure as e:
        logger.warning("n=%d trial %d excluded: %s", n, trial, e)
        return None
    if scan.degenerate:
        logger.warning("n=%d trial %d excluded: degenerate gap %.3e", n, trial, scan.delta_min)
        return None
    return scan.delta_min, lambda_norm(prob)


def _aggregate(n: int, results: Sequence[Optional[Tuple[float, float]]]) -> dict:
    kept = [r for r in results if r is not None]
    row = {'n': n, 'trials': len(kept), 'excluded': len(results) - len(kept)}
    if not kept:
        return {**row, **{c: math.nan for c in SCALING_COLUMNS if c not in row}}
    delta = np.array([r[0] for r in kept])
    lam = np.array([r[1] for r in kept])
    row.update({
        'delta_ave': float(delta.mean()),
        'delta_stderr': _stderr(delta),
        'inv_delta_ave': float((1.0 / delta).mean()),
        'inv_delta_stderr': _stderr(1.0 / delta),
        'inv_of_ave': float(1.0 / delta.mean()),
        'lambda_ave': float(lam.mean()),
        'lambda_stderr': _stderr(lam),
    })
    return row


def run_gap_ensemble(spec: EnsembleSpec, workers: Optional[int] = None) -> pd.DataFrame:
    """ScalingTable: per-size averages of delta, 1/delta and lambda in both averaging orders"""
    spec.validate()
    tasks = [(spec, n, trial) for n in spec.sizes for trial in range(spec.trials)]
    logger.info("gap ensemble: %d sizes x %d trials (%s)", len(spec.sizes), spec.trials, spec.model.model)
    results = parallel_map(_gap_trial, tasks, workers)

    rows = []
    for k, n in enumerate(spec.sizes):
        chunk = results[k * spec.trials:(k + 1) * spec.trials]
        rows.append(_aggregate(n, chunk))
        logger.info("n=%d: [delta]ave=%.6g over %d trials", n, rows[-1]['delta_ave'], rows[-1]['trials'])

    _check_exclusions(sum(r['excluded'] for r in rows), len(tasks))
    return pd.DataFrame(rows, columns=SCALING_COLUMNS)


def run_p_sweep(spec: EnsembleSpec, p_values: Sequence[float],
                workers: Optional[int] = None) -> pd.DataFrame:
    """Gap ensembles repeated over copying probabilities; adds a p_copy column"""
    tables = []
    for p in p_values:
        table = run_gap_ensemble(replace(spec, model=replace(spec.model, p_copy=float(p))), workers)
        table.insert(0, 'p_copy', float(p))
        tables.append(table)
    return pd.concat(tables, ignore_index=True)


# ─── Evolution ensembles ─────────────────────────────────────────────────────

def _error_trial(task) -> List[float]:
    model, n, trial, seed, alpha, t_grid, steps_per_unit = task
    g = generate_graph(model.with_size(n, seed=split_seed(seed, n, trial)))
    prob = build_problem(google_matrix_of(g, alpha))
    target = ground_state(prob.h_p)
    errors = []
    for T in t_grid:
        psi = evolve(prob, Schedule('linear', T), steps_per_unit, check_step=True, target=target)
        errors.append(fidelity_and_error(psi, target)[1])
    return errors


def run_error_vs_T(n: int, t_grid: Sequence[float], trials: int = Defaults.EVOLUTION_TRIALS,
                   seed: int = 0, model: Optional[GraphModelConfig] = None,
                   alpha: float = Defaults.ALPHA, steps_per_unit: int = Defaults.STEPS_PER_UNIT,
                   workers: Optional[int] = None) -> pd.DataFrame:
    """Average adiabatic error [eps]ave at every total time T (linear schedule)"""
    model = GraphModelConfig(model='mixed') if model is None else model
    t_grid = [float(t) for t in t_grid]
    if not t_grid or any(t <= 0 for t in t_grid) or any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise InvalidParam("T grid must be positive and strictly increasing")
    if trials < 1:
        raise InvalidParam(f"trials must be >= 1, got {trials}")
    model.with_size(n).validate()

    tasks = [(model, n, trial, seed, alpha, tuple(t_grid), steps_per_unit) for trial in range(trials)]
    errors = np.array(parallel_map(_error_trial, tasks, workers))
    return pd.DataFrame({
        'T': t_grid,
        'eps_ave': errors.mean(axis=0),
        'eps_stderr': [_stderr(errors[:, k]) for k in range(len(t_grid))],
        'trials': trials,
    })


def _runtime_trial(task) -> Tuple[float, float]:
    model, n, trial, seed, alpha, b, eps_target, steps_per_unit = task
    g = generate_graph(model.with_size(n, seed=split_seed(seed, n, trial)))
    prob = build_problem(google_matrix_of(g, alpha))
    T = predicted_runtime(n, eps_target, b)
    target = ground_state(prob.h_p)
    psi = evolve(prob, Schedule('linear', T), steps_per_unit, check_step=True, target=target)
    return T, fidelity_and_error(psi, target)[1]


def run_runtime_verification(b: int, eps_target: float, sizes: Sequence[int],
                             trials: int = 20, seed: int = 0,
                             model: Optional[GraphModelConfig] = None,
                             alpha: float = Defaults.ALPHA,
                             steps_per_unit: int = Defaults.STEPS_PER_UNIT,
                             workers: Optional[int] = None) -> pd.DataFrame:
    """Evolve for the predicted run time and check the final error stays below eps_target"""
    if b not in RUNTIME_EXPONENTS:
        raise InvalidParam(f"b must be one of {RUNTIME_EXPONENTS}, got {b}")
    if not 0.0 < eps_target < 1.0:
        raise InvalidParam(f"eps_target must lie in (0, 1), got {eps_target}")
    if trials < 1:
        raise InvalidParam(f"trials must be >= 1, got {trials}")
    sizes = [int(n) for n in sizes]
    if not sizes or any(n < 3 or n > RUNTIME_VERIFY_MAX_N for n in sizes):
        raise InvalidParam(f"sizes must lie in [3, {RUNTIME_VERIFY_MAX_N}], got {sizes}")
    model = GraphModelConfig(model='mixed') if model is None else model
    for n in sizes:
        model.with_size(n).validate()

    tasks = [(model, n, trial, seed, alpha, b, eps_target, steps_per_unit)
             for n in sizes for trial in range(trials)]
    results = parallel_map(_runtime_trial, tasks, workers)

    rows = []
    for k, n in enumerate(sizes):
        chunk = results[k * trials:(k + 1) * trials]
        eps = np.array([r[1] for r in chunk])
        passed = int(np.count_nonzero(eps <= eps_target))
        rows.append({'n': n, 'T': chunk[0][0], 'trials': trials, 'passed': passed,
                     'pass_rate': passed / trials, 'eps_max': float(eps.max())})
        logger.info("n=%d: %d/%d runs within eps=%.3g", n, passed, trials, eps_target)
    return pd.DataFrame(rows)


# ─── Measurement experiments ─────────────────────────────────────────────────

def _swap_trial(task) -> Tuple[float, float]:
    model, n, trial, seed, alpha, shots = task
    g = generate_graph(model.with_size(n, seed=split_seed(seed, n, trial)))
    g2 = perturb_graph(g, split_seed(seed, n, trial, 1))
    state_a = QuantumPageRankState.from_pagerank(pagerank_power(google_matrix_of(g, alpha)))
    state_b = QuantumPageRankState.from_pagerank(pagerank_power(google_matrix_of(g2, alpha)))
    result = swap_test(state_a, state_b, shots, split_seed(seed, n, trial, 2))
    return result.exact_fidelity, result.fidelity_estimate


def run_swap_experiment(n: int = 64, trials: int = 100, shots: int = Defaults.SWAP_SHOTS,
                        seed: int = 0, model: Optional[GraphModelConfig] = None,
                        alpha: float = Defaults.ALPHA, workers: Optional[int] = None) -> pd.DataFrame:
    """SWAP-test estimates between each graph and a copy with one extra edge"""
    model = GraphModelConfig() if model is None else model
    model.with_size(n).validate()
    tasks = [(model, n, trial, seed, alpha, shots) for trial in range(trials)]
    results = parallel_map(_swap_trial, tasks, workers)
    table = pd.DataFrame(results, columns=['f_exact', 'f_hat'])
    table.insert(0, 'trial', range(trials))
    table['abs_error'] = (table['f_hat'] - table['f_exact']).abs()
    return table


@dataclass(frozen=True)
class HoeffdingCoverage:
    shots: int
    trials: int
    violations: int

    @property
    def violation_rate(self) -> float:
        return self.violations / self.trials


def run_hoeffding_coverage(state: QuantumPageRankState, e: float = 0.05, confidence: float = 0.9,
                           trials: int = 1000, seed: int = 0) -> HoeffdingCoverage:
    """Fraction of trials in which the estimate of the largest pi_i misses by more than e"""
    shots = hoeffding_shots(e, confidence)
    site = int(np.argmax(state.probabilities))
    exact = state.probabilities[site]
    violations = 0
    for trial in range(trials):
        record = sample_sites(state, shots, split_seed(seed, state.n, trial))
        if abs(record.frequencies[site] - exact) > e:
            violations += 1
    return HoeffdingCoverage(shots, trials, violations)
