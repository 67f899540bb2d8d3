"""
Command Line Module
Subcommands wiring graph files, configs and result tables to the library operations
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from adiabatic import (Schedule, build_problem, evolution_trace, evolve, fidelity_and_error,
                       gap_scan, ground_state, lambda_norm)
from core.exceptions import AdiaRankError, InputError, InvalidParam, UsageError
from core.logging_setup import configure_logging
from core.settings import Defaults
from data.data_loader import (ConfigLoader, EnsembleConfigKeys, ResultReader, ResultWriter, Trailer,
                              config_hash, parse_float_list, parse_size_list)
from experiments import (EnsembleSpec, FIT_MODELS, compare_fit_families, fit_scaling,
                         run_error_vs_T, run_gap_ensemble, run_runtime_verification)
from googlerank import google_matrix_of, inverse_pagerank, pagerank, pagerank_mcmc
from measurement import (QuantumPageRankState, estimate_top_k, format_swap_result, perturb_graph,
                         rank_cost_report, sample_sites, swap_test)
from plotting.plot_manager import emit_svg_plot
from webgraph import (GraphModelConfig, format_edgelist, generate_graph, read_edgelist,
                      write_edgelist)

logger = logging.getLogger(__name__)

COMMANDS = ('gen', 'pagerank', 'gapscan', 'evolve', 'ensemble', 'errvst', 'verify-runtime',
            'measure', 'swaptest', 'fit', 'plot')
CLI_MODELS = ('pa', 'copying', 'complete', 'reverse', 'mixed', 'undirected')
DEFAULT_T_GRID = '10..1e4:8'
DEFAULT_RUNTIME_SIZES = '8,12,16,20'


@dataclass
class Command:
    """One parsed subcommand and its options"""

    name: str
    options: Dict[str, object] = field(default_factory=dict)
    verbosity: int = 0

    def __getattr__(self, item):
        if item == 'options':
            raise AttributeError(item)
        try:
            return self.options[item]
        except KeyError:
            raise AttributeError(item) from None


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


# ─── Argument types ──────────────────────────────────────────────────────────

def _alpha(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1), got {text}")
    return value


def _open_unit(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text, 0)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _size_list(text: str) -> List[int]:
    try:
        return parse_size_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _float_list(text: str) -> List[float]:
    try:
        return parse_float_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


# ─── Parser ──────────────────────────────────────────────────────────────────

def _add_model_flags(p: argparse.ArgumentParser, required_n: bool = False) -> None:
    p.add_argument('--model', choices=CLI_MODELS, default=None)
    p.add_argument('--base', choices=('pa', 'copying'), default=None)
    if required_n:
        p.add_argument('--n', type=_positive_int, required=True)
    p.add_argument('--m', type=_positive_int, default=None)
    p.add_argument('--p-copy', type=float, default=None)
    p.add_argument('--d0', type=_positive_int, default=None)
    p.add_argument('--mix-ratio', type=_positive_float, default=None)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='adiarank', description='Adiabatic quantum PageRank toolkit')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debug output on stderr')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser, metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('gen', help='generate a random web graph')
    _add_model_flags(p, required_n=True)
    p.add_argument('--seed', type=_nonnegative_int, default=0)
    p.add_argument('--no-loops', action='store_true', help='complete graph without self-loops')
    p.add_argument('--out', default='-')

    p = sub.add_parser('pagerank', help='classical PageRank of a graph')
    p.add_argument('--graph', required=True)
    p.add_argument('--alpha', type=_alpha, default=Defaults.ALPHA)
    p.add_argument('--tol', type=_positive_float, default=Defaults.PAGERANK_TOL)
    p.add_argument('--method', choices=('power', 'mcmc', 'inverse'), default='power')
    p.add_argument('--walks', type=_positive_int, default=100000)
    p.add_argument('--seed', type=_nonnegative_int, default=0)
    p.add_argument('--out', default='-')

    p = sub.add_parser('gapscan', help='minimum spectral gap of h(s)')
    p.add_argument('--graph', required=True)
    p.add_argument('--alpha', type=_alpha, default=Defaults.ALPHA)
    p.add_argument('--grid', type=_positive_int, default=Defaults.SCAN_GRID)
    p.add_argument('--refine-tol', type=_positive_float, default=Defaults.REFINE_TOL)
    p.add_argument('--out', default='-')

    p = sub.add_parser('evolve', help='simulate the adiabatic evolution')
    p.add_argument('--graph', required=True)
    p.add_argument('--alpha', type=_alpha, default=Defaults.ALPHA)
    p.add_argument('--T', dest='total_time', type=_positive_float, required=True)
    p.add_argument('--schedule', choices=('linear', 'smooth'), default='linear')
    p.add_argument('--order', type=_positive_int, default=1)
    p.add_argument('--steps-per-unit', type=_positive_int, default=Defaults.STEPS_PER_UNIT)
    p.add_argument('--stride', type=_positive_int, default=None)
    p.add_argument('--check-step', action='store_true')
    p.add_argument('--out', default='-')

    p = sub.add_parser('ensemble', help='gap and lambda scaling over random graphs')
    p.add_argument('--config', default=None)
    _add_model_flags(p)
    p.add_argument('--sizes', type=_size_list, default=None)
    p.add_argument('--trials', type=_positive_int, default=None)
    p.add_argument('--seed', type=_nonnegative_int, default=None)
    p.add_argument('--alpha', type=_alpha, default=None)
    p.add_argument('--grid', type=_positive_int, default=None)
    p.add_argument('--refine-tol', type=_positive_float, default=None)
    p.add_argument('--out', default='-')
    p.add_argument('--plot', default=None, help='also write an SVG of 1/[delta]ave with a semilog fit')

    p = sub.add_parser('errvst', help='adiabatic error against total time')
    p.add_argument('--config', default=None)
    p.add_argument('--n', type=_positive_int, default=None)
    p.add_argument('--t-grid', type=_float_list, default=None)
    p.add_argument('--trials', type=_positive_int, default=None)
    p.add_argument('--seed', type=_nonnegative_int, default=None)
    p.add_argument('--out', default='-')

    p = sub.add_parser('verify-runtime', help='check the predicted run time on small graphs')
    p.add_argument('--config', default=None)
    p.add_argument('--b', type=int, choices=(2, 3), default=None)
    p.add_argument('--eps', type=_open_unit, default=None)
    p.add_argument('--sizes', type=_size_list, default=None)
    p.add_argument('--trials', type=_positive_int, default=None)
    p.add_argument('--seed', type=_nonnegative_int, default=None)
    p.add_argument('--out', default='-')

    p = sub.add_parser('measure', help='sample sites of the quantum PageRank state')
    p.add_argument('--graph', required=True)
    p.add_argument('--alpha', type=_alpha, default=Defaults.ALPHA)
    p.add_argument('--shots', type=_positive_int, required=True)
    p.add_argument('--seed', type=_nonnegative_int, default=0)
    p.add_argument('--k', type=_positive_int, default=None)
    p.add_argument('--out', default='-')

    p = sub.add_parser('swaptest', help='SWAP-test fidelity of two PageRank states')
    p.add_argument('--graph', required=True)
    other = p.add_mutually_exclusive_group(required=True)
    other.add_argument('--graph2')
    other.add_argument('--perturb-seed', type=_nonnegative_int)
    p.add_argument('--alpha', type=_alpha, default=Defaults.ALPHA)
    p.add_argument('--shots', type=_positive_int, default=Defaults.SWAP_SHOTS)
    p.add_argument('--seed', type=_nonnegative_int, default=0)

    p = sub.add_parser('fit', help='fit a scaling law to a table column')
    p.add_argument('--table', required=True)
    p.add_argument('--column', required=True)
    p.add_argument('--x-column', default='n')
    p.add_argument('--model', choices=FIT_MODELS + ('compare',), default='semilog')
    p.add_argument('--out', default='-')

    p = sub.add_parser('plot', help='SVG plot of a table column')
    p.add_argument('--table', required=True)
    p.add_argument('--column', required=True)
    p.add_argument('--x-column', default='n')
    p.add_argument('--model', choices=FIT_MODELS, default=None)
    p.add_argument('--out', required=True)

    return parser


def parse_args(argv: Optional[List[str]] = None) -> Command:
    """Parse argv into a Command; bad flags raise UsageError naming the flag"""
    args = vars(build_parser().parse_args(argv))
    name = args.pop('command')
    verbosity = args.pop('verbose')
    return Command(name, args, verbosity)


# ─── Shared helpers ──────────────────────────────────────────────────────────

def _graph_config(values: Dict[str, object], n: int = 64, seed: int = 0,
                  with_self_loops: bool = True) -> GraphModelConfig:
    model = EnsembleConfigKeys.canonical_model(values.get('model') or 'mixed')
    base = EnsembleConfigKeys.canonical_model(values.get('base') or 'pa')
    return GraphModelConfig(model=model, n=n, seed=seed, base=base,
                            m=values.get('m', Defaults.EDGES_PER_VERTEX),
                            p_copy=values.get('p_copy', Defaults.P_COPY),
                            d0=values.get('d0', Defaults.COPY_OUT_DEGREE),
                            mix_ratio=values.get('mix_ratio', Defaults.MIX_RATIO),
                            with_self_loops=with_self_loops)


def _model_overrides(cmd: Command) -> Dict[str, object]:
    return {'model': cmd.model, 'base': cmd.base, 'm': cmd.m, 'p_copy': cmd.p_copy,
            'd0': cmd.d0, 'mix_ratio': cmd.mix_ratio}


def _load_values(cmd: Command, overrides: Dict[str, object]) -> Dict[str, object]:
    file_values = ConfigLoader().parse_config_file(cmd.config) if cmd.config else {}
    values = ConfigLoader.merge(file_values, overrides)
    for key in ('model', 'base'):
        if values.get(key) is not None:
            values[key] = EnsembleConfigKeys.canonical_model(values[key])
    return values


def _write(table: pd.DataFrame, path: str, digest: Optional[str] = None,
           trailer: Optional[Trailer] = None) -> None:
    ResultWriter().write_table(table, path, digest, trailer)


# ─── Subcommands ─────────────────────────────────────────────────────────────

def _cmd_gen(cmd: Command) -> None:
    cfg = _graph_config(_model_overrides(cmd), cmd.n, cmd.seed, with_self_loops=not cmd.no_loops)
    g = generate_graph(cfg)
    logger.info("Generated %s graph: n=%d, %d edges", cfg.model, g.n, g.num_edges)
    if cmd.out == '-':
        sys.stdout.write(format_edgelist(g))
    else:
        write_edgelist(g, cmd.out)


def _cmd_pagerank(cmd: Command) -> None:
    g = read_edgelist(cmd.graph)
    if cmd.method == 'mcmc':
        result = pagerank_mcmc(g, cmd.alpha, cmd.walks, seed=cmd.seed)
        trailer = {'walks': cmd.walks}
    else:
        rank = inverse_pagerank if cmd.method == 'inverse' else pagerank
        result = rank(g, cmd.alpha, tol=cmd.tol)
        trailer = {'residual': result.residual, 'iterations': result.iterations}
    _write(pd.DataFrame({'node': np.arange(g.n), 'p': result.p}), cmd.out, trailer=trailer)


def _cmd_gapscan(cmd: Command) -> None:
    prob = build_problem(google_matrix_of(read_edgelist(cmd.graph), cmd.alpha))
    scan = gap_scan(prob, cmd.grid, cmd.refine_tol)
    table = pd.DataFrame(scan.grid, columns=['s', 'gap'])
    _write(table, cmd.out, trailer={('delta', 's_star'): (scan.delta_min, scan.s_star),
                                    'lambda': lambda_norm(prob)})


def _cmd_evolve(cmd: Command) -> None:
    prob = build_problem(google_matrix_of(read_edgelist(cmd.graph), cmd.alpha))
    schedule = Schedule(cmd.schedule, cmd.total_time, cmd.order)
    psi = evolve(prob, schedule, cmd.steps_per_unit, check_step=cmd.check_step)
    fidelity, error = fidelity_and_error(psi, ground_state(prob.h_p))
    if cmd.stride:
        table = evolution_trace(prob, schedule, cmd.steps_per_unit, cmd.stride)
    else:
        table = pd.DataFrame([{'T': cmd.total_time, 'fidelity': fidelity, 'error': error}])
    _write(table, cmd.out, trailer={'fidelity': fidelity, 'error': error})


def _ensemble_spec(values: Dict[str, object]) -> EnsembleSpec:
    if not values.get('n_list'):
        raise UsageError("ensemble needs --sizes or an n_list config key")
    return EnsembleSpec(model=_graph_config(values), sizes=tuple(values['n_list']),
                        trials=values.get('trials', Defaults.SPECTRAL_TRIALS),
                        seed=values.get('seed', 0), alpha=values.get('alpha', Defaults.ALPHA),
                        grid_points=values.get('scan.grid', Defaults.SCAN_GRID),
                        refine_tol=values.get('scan.refine_tol', Defaults.REFINE_TOL))


def _cmd_ensemble(cmd: Command) -> None:
    values = _load_values(cmd, {**_model_overrides(cmd), 'n_list': cmd.sizes, 'trials': cmd.trials,
                                'seed': cmd.seed, 'alpha': cmd.alpha, 'scan.grid': cmd.grid,
                                'scan.refine_tol': cmd.refine_tol})
    table = run_gap_ensemble(_ensemble_spec(values))
    _write(table, cmd.out, config_hash(values))
    if cmd.plot:
        fit = fit_scaling(table, 'inv_of_ave', 'semilog')
        emit_svg_plot(table, fit, cmd.plot)


def _cmd_errvst(cmd: Command) -> None:
    values = _load_values(cmd, {'n_list': [cmd.n] if cmd.n else None, 't_grid': cmd.t_grid,
                                'trials': cmd.trials, 'seed': cmd.seed})
    if not values.get('n_list'):
        raise UsageError("errvst needs --n or an n_list config key")
    n = values['n_list'][0]
    t_grid = values.get('t_grid') or parse_float_list(DEFAULT_T_GRID)
    table = run_error_vs_T(n, t_grid, values.get('trials', Defaults.EVOLUTION_TRIALS),
                           values.get('seed', 0), _graph_config(values),
                           values.get('alpha', Defaults.ALPHA),
                           values.get('evolve.steps_per_unit', Defaults.STEPS_PER_UNIT))
    trailer = {}
    if len(table) >= 3 and (table['eps_ave'] > 0).all():
        fit = fit_scaling(table, 'eps_ave', 'loglog', x_column='T')
        trailer = {'exponent': fit.exponent, 'r_squared': fit.r_squared}
    _write(table, cmd.out, config_hash(values), trailer)


def _cmd_verify_runtime(cmd: Command) -> None:
    values = _load_values(cmd, {'b': cmd.b, 'eps_target': cmd.eps, 'n_list': cmd.sizes,
                                'trials': cmd.trials, 'seed': cmd.seed})
    table = run_runtime_verification(values.get('b', 2), values.get('eps_target', 0.1),
                                     values.get('n_list') or parse_size_list(DEFAULT_RUNTIME_SIZES),
                                     values.get('trials', 20), values.get('seed', 0),
                                     _graph_config(values), values.get('alpha', Defaults.ALPHA),
                                     values.get('evolve.steps_per_unit', Defaults.STEPS_PER_UNIT))
    if (table['pass_rate'] < 1.0).any():
        logger.warning("Some runs exceeded the target error")
    _write(table, cmd.out, config_hash(values))


def _cmd_measure(cmd: Command) -> None:
    g = read_edgelist(cmd.graph)
    state = QuantumPageRankState.from_pagerank(pagerank(g, cmd.alpha))
    record = sample_sites(state, cmd.shots, cmd.seed)
    top = estimate_top_k(record, cmd.k)
    gamma = rank_cost_report(state).gamma if g.n >= 2 else np.zeros(1)
    _write(record.to_frame(), cmd.out,
           trailer={'shots': cmd.shots, 'top_k': top, 'gamma_top': [float(gamma[i]) for i in top]})


def _cmd_swaptest(cmd: Command) -> None:
    g = read_edgelist(cmd.graph)
    g2 = read_edgelist(cmd.graph2) if cmd.graph2 else perturb_graph(g, cmd.perturb_seed)
    state_a = QuantumPageRankState.from_pagerank(pagerank(g, cmd.alpha))
    state_b = QuantumPageRankState.from_pagerank(pagerank(g2, cmd.alpha))
    sys.stdout.write(format_swap_result(swap_test(state_a, state_b, cmd.shots, cmd.seed)) + '\n')


def _cmd_fit(cmd: Command) -> None:
    table = ResultReader().read_table(cmd.table)
    if cmd.model == 'compare':
        fits = compare_fit_families(table, cmd.column, cmd.x_column)
    else:
        fits = [fit_scaling(table, cmd.column, cmd.model, cmd.x_column)]
    _write(pd.concat([fit.to_frame() for fit in fits], ignore_index=True), cmd.out)


def _cmd_plot(cmd: Command) -> None:
    table = ResultReader().read_table(cmd.table)
    fit = fit_scaling(table, cmd.column, cmd.model, cmd.x_column) if cmd.model else None
    emit_svg_plot(table, fit, cmd.out, cmd.column, cmd.x_column)


HANDLERS: Dict[str, Callable[[Command], None]] = {
    'gen': _cmd_gen,
    'pagerank': _cmd_pagerank,
    'gapscan': _cmd_gapscan,
    'evolve': _cmd_evolve,
    'ensemble': _cmd_ensemble,
    'errvst': _cmd_errvst,
    'verify-runtime': _cmd_verify_runtime,
    'measure': _cmd_measure,
    'swaptest': _cmd_swaptest,
    'fit': _cmd_fit,
    'plot': _cmd_plot,
}


def _report(error: AdiaRankError) -> int:
    detail = ' '.join(str(error.detail).split())
    sys.stderr.write(f"error: {error.code}: {detail}\n")
    return error.exit_code


def dispatch(cmd: Command) -> int:
    """Run a parsed command; returns the process exit code"""
    if cmd.name not in HANDLERS:
        return _report(UsageError(f"unknown command '{cmd.name}'"))
    try:
        HANDLERS[cmd.name](cmd)
    except AdiaRankError as e:
        logger.debug("%s failed", cmd.name, exc_info=True)
        return _report(e)
    except (ValueError, TypeError) as e:
        logger.debug("%s failed on bad input", cmd.name, exc_info=True)
        return _report(InputError(str(e)))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cmd = parse_args(argv)
    except AdiaRankError as e:
        return _report(e)
    configure_logging(cmd.verbosity)
    return dispatch(cmd)
