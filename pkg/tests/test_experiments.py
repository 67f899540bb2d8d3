"""Tests for seed splitting, trial ensembles and scaling-law fits"""

import math

import numpy as np
import pandas as pd
import pytest
from pandas.testing import assert_frame_equal

import experiments.ensemble as ensemble
from adiabatic import predicted_runtime
from adiabatic.spectrum import SpectralScan
from core.exceptions import (EigenFailure, ExcessiveExclusions, InsufficientData, InvalidConfig,
                             InvalidParam, SingularFit, StepTooCoarse)
from experiments import (SCALING_COLUMNS, EnsembleSpec, classify_gap_scaling, compare_fit_families,
                         fit_scaling, run_error_vs_T, run_gap_ensemble, run_hoeffding_coverage,
                         run_p_sweep, run_runtime_verification, run_swap_experiment, split_seed,
                         splitmix64)
from measurement import quantum_state_from_pagerank
from webgraph import GraphModelConfig

SIZES = np.array([4, 8, 16, 32, 64, 128, 256], dtype=float)


def planted(values):
    return pd.DataFrame({'n': SIZES, 'y': values})


class TestSeeds:

    def test_splitmix_reference_value(self):
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_split_is_deterministic(self):
        assert split_seed(42, 16, 3) == split_seed(42, 16, 3)

    def test_split_separates_keys(self):
        seeds = {split_seed(7, n, t) for n in (4, 8, 16) for t in range(50)}
        assert len(seeds) == 150

    def test_split_is_64_bit(self):
        assert 0 <= split_seed(-1, 2 ** 70) < 2 ** 64


class TestEnsembleSpec:

    def test_sizes_must_increase(self):
        with pytest.raises(InvalidConfig):
            EnsembleSpec(sizes=(8, 4), trials=1).validate()

    def test_trials_must_be_positive(self):
        with pytest.raises(InvalidConfig):
            EnsembleSpec(trials=0).validate()

    def test_model_validated_per_size(self):
        spec = EnsembleSpec(model=GraphModelConfig(model='copying', d0=5), sizes=(4,), trials=1)
        with pytest.raises(InvalidConfig):
            spec.validate()

    def test_graph_config_uses_split_seed(self):
        spec = EnsembleSpec(seed=3)
        cfg = spec.graph_config(16, 2)
        assert cfg.n == 16
        assert cfg.seed == split_seed(3, 16, 2)


class TestGapEnsemble:

    def test_complete_graph_has_unit_gap(self):
        spec = EnsembleSpec(model=GraphModelConfig(model='complete'), sizes=(4, 8), trials=3)
        table = run_gap_ensemble(spec, workers=1)
        assert list(table.columns) == SCALING_COLUMNS
        assert np.allclose(table['delta_ave'], 1.0)
        assert np.allclose(table['inv_of_ave'], 1.0)
        assert np.allclose(table['lambda_ave'], 0.0, atol=1e-10)
        assert list(table['trials']) == [3, 3]

    def test_averaging_orders(self):
        spec = EnsembleSpec(sizes=(6, 10), trials=12, seed=4)
        table = run_gap_ensemble(spec, workers=1)
        assert (table['inv_delta_ave'] >= table['inv_of_ave'] - 1e-12).all()
        assert np.allclose(table['inv_of_ave'], 1.0 / table['delta_ave'])
        assert (table['excluded'] == 0).all()

    def test_independent_of_worker_count(self):
        spec = EnsembleSpec(sizes=(5, 9), trials=6, seed=11)
        assert_frame_equal(run_gap_ensemble(spec, workers=1), run_gap_ensemble(spec, workers=3))

    def test_seed_changes_results(self):
        a = run_gap_ensemble(EnsembleSpec(sizes=(8,), trials=4, seed=1), workers=1)
        b = run_gap_ensemble(EnsembleSpec(sizes=(8,), trials=4, seed=2), workers=1)
        assert a['delta_ave'].iloc[0] != b['delta_ave'].iloc[0]

    def test_rare_exclusions_are_tolerated(self, monkeypatch):
        calls = {'count': 0}

        def flaky(prob, grid_points, refine_tol):
            calls['count'] += 1
            if calls['count'] == 1:
                raise EigenFailure("forced")
            return SpectralScan([], 0.5, 0.5)

        monkeypatch.setattr(ensemble, 'gap_scan', flaky)
        spec = EnsembleSpec(model=GraphModelConfig(model='complete'), sizes=(4,), trials=200)
        table = run_gap_ensemble(spec, workers=1)
        assert table['trials'].iloc[0] == 199
        assert table['excluded'].iloc[0] == 1
        assert table['delta_ave'].iloc[0] == pytest.approx(0.5)

    def test_frequent_exclusions_fail(self, monkeypatch):
        def failing(prob, grid_points, refine_tol):
            raise EigenFailure("forced")

        monkeypatch.setattr(ensemble, 'gap_scan', failing)
        spec = EnsembleSpec(model=GraphModelConfig(model='complete'), sizes=(4,), trials=10)
        with pytest.raises(ExcessiveExclusions):
            run_gap_ensemble(spec, workers=1)

    def test_p_sweep(self):
        spec = EnsembleSpec(model=GraphModelConfig(model='copying'), sizes=(5, 6), trials=2)
        table = run_p_sweep(spec, [0.2, 0.8], workers=1)
        assert list(table['p_copy']) == [0.2, 0.2, 0.8, 0.8]
        assert list(table.columns) == ['p_copy'] + SCALING_COLUMNS


class TestEvolutionEnsembles:

    def test_error_falls_with_time(self):
        table = run_error_vs_T(4, [1.0, 100.0], trials=2, seed=3, workers=1)
        assert list(table.columns) == ['T', 'eps_ave', 'eps_stderr', 'trials']
        assert table['eps_ave'].iloc[1] < table['eps_ave'].iloc[0]

    @pytest.mark.parametrize("grid", [[], [10.0, 5.0], [0.0, 1.0]])
    def test_bad_time_grid(self, grid):
        with pytest.raises(InvalidParam):
            run_error_vs_T(4, grid, trials=1)

    def test_runtime_table(self):
        table = run_runtime_verification(2, 0.2, [4, 5], trials=2, seed=1, workers=1)
        assert list(table.columns) == ['n', 'T', 'trials', 'passed', 'pass_rate', 'eps_max']
        assert table['T'].iloc[0] == pytest.approx(predicted_runtime(4, 0.2, 2))
        assert ((table['pass_rate'] >= 0) & (table['pass_rate'] <= 1)).all()

    def test_pass_rate_grows_with_target(self):
        rates = [run_runtime_verification(2, eps, [4, 6], trials=3, seed=5, workers=1)['pass_rate']
                 for eps in (0.05, 0.1, 0.2)]
        for tight, loose in zip(rates, rates[1:]):
            assert (loose.to_numpy() >= tight.to_numpy()).all()

    def test_coarse_step_stops_error_ensemble(self):
        with pytest.raises(StepTooCoarse):
            run_error_vs_T(16, [2.0], trials=5, seed=0, steps_per_unit=1, workers=1)

    def test_coarse_step_stops_runtime_verification(self):
        with pytest.raises(StepTooCoarse):
            run_runtime_verification(2, 0.9, [16], trials=5, seed=0, steps_per_unit=1, workers=1)

    @pytest.mark.parametrize("b, sizes", [(4, [8]), (2, [21]), (2, [2]), (2, [])])
    def test_runtime_arguments(self, b, sizes):
        with pytest.raises(InvalidParam):
            run_runtime_verification(b, 0.1, sizes, trials=1)


class TestMeasurementExperiments:

    def test_swap_experiment(self):
        table = run_swap_experiment(n=16, trials=3, shots=2000, seed=2, workers=1)
        assert list(table.columns) == ['trial', 'f_exact', 'f_hat', 'abs_error']
        assert list(table['trial']) == [0, 1, 2]
        assert ((table['f_exact'] > 0) & (table['f_exact'] <= 1)).all()
        assert np.allclose(table['abs_error'], (table['f_hat'] - table['f_exact']).abs())

    def test_hoeffding_coverage(self, dangling_pagerank):
        state = quantum_state_from_pagerank(dangling_pagerank)
        coverage = run_hoeffding_coverage(state, e=0.05, confidence=0.9, trials=200, seed=1)
        assert coverage.shots == math.ceil(math.log(20.0) / (2 * 0.05 ** 2))
        assert coverage.violation_rate <= 0.1


class TestScalingFit:

    def test_semilog(self):
        fit = fit_scaling(planted(2.0 + 3.0 * np.log10(SIZES)), 'y', 'semilog')
        assert fit.coefficients == pytest.approx((2.0, 3.0))
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.points == 7

    def test_loglog(self):
        fit = fit_scaling(planted(5.0 * SIZES ** 0.5), 'y', 'loglog')
        assert fit.coefficients == pytest.approx((math.log(5.0), 0.5))
        assert fit.predict(100.0) == pytest.approx(50.0)

    def test_polyloglog(self):
        fit = fit_scaling(planted(1.0 + 2.0 * np.log(np.log(SIZES))), 'y', 'polyloglog')
        assert fit.coefficients == pytest.approx((1.0, 2.0))

    def test_polylog_power(self):
        fit = fit_scaling(planted(2.0 * np.log10(SIZES) ** 1.5), 'y', 'polylog_power')
        assert fit.coefficients == pytest.approx((2.0, 1.5))
        assert fit.exponent == pytest.approx(1.5)
        assert fit.predict(1000.0) == pytest.approx(2.0 * 3.0 ** 1.5)

    def test_noisy_fit_has_lower_r_squared(self):
        noise = np.array([0.1, -0.2, 0.15, -0.05, 0.2, -0.1, 0.05])
        fit = fit_scaling(planted(1.0 + np.log10(SIZES) + noise), 'y', 'semilog')
        assert 0.0 < fit.r_squared < 1.0

    def test_skips_nonfinite_rows(self):
        table = planted(2.0 + np.log10(SIZES))
        table.loc[0, 'y'] = np.nan
        assert fit_scaling(table, 'y', 'semilog').points == 6

    def test_frame(self):
        frame = fit_scaling(planted(np.log10(SIZES)), 'y', 'semilog').to_frame()
        assert list(frame.columns) == ['model', 'column', 'x_column', 'a', 'b', 'r_squared', 'points']

    def test_too_few_rows(self):
        with pytest.raises(InsufficientData):
            fit_scaling(pd.DataFrame({'n': [4, 8], 'y': [1.0, 2.0]}), 'y', 'semilog')

    def test_singular(self):
        with pytest.raises(SingularFit):
            fit_scaling(pd.DataFrame({'n': [8, 8, 8], 'y': [1.0, 2.0, 3.0]}), 'y', 'semilog')

    @pytest.mark.parametrize("model, column, y", [
        ('cubic', 'y', [1.0, 2.0, 3.0]),
        ('semilog', 'missing', [1.0, 2.0, 3.0]),
        ('loglog', 'y', [1.0, -2.0, 3.0]),
        ('semilog', 'y', ['low', 'mid', 'high']),
    ])
    def test_invalid(self, model, column, y):
        with pytest.raises(InvalidParam):
            fit_scaling(pd.DataFrame({'n': [4, 8, 16], 'y': y}), column, model)

    def test_polyloglog_domain(self):
        with pytest.raises(InvalidParam):
            fit_scaling(pd.DataFrame({'n': [1, 8, 16], 'y': [1.0, 2.0, 3.0]}), 'y', 'polyloglog')


class TestFamilyComparison:

    def test_logarithmic_data_is_large_gap(self):
        table = planted(2.0 + 3.0 * np.log10(SIZES)).rename(columns={'y': 'inv_of_ave'})
        fits = compare_fit_families(table, 'inv_of_ave')
        assert fits[0].model == 'semilog'
        assert [f.r_squared for f in fits] == sorted((f.r_squared for f in fits), reverse=True)
        assert classify_gap_scaling(table) == 'large gap'

    def test_power_law_is_small_gap(self):
        table = planted(0.5 * SIZES ** 1.2).rename(columns={'y': 'inv_of_ave'})
        assert compare_fit_families(table, 'inv_of_ave')[0].model == 'loglog'
        assert classify_gap_scaling(table) == 'small gap'

    def test_needs_four_rows(self):
        with pytest.raises(InsufficientData):
            compare_fit_families(planted(SIZES)[:3], 'y')
