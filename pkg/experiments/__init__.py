"""
Ensemble experiments and scaling-law fits
"""

from .seeds import split_seed, splitmix64
from .ensemble import (EnsembleSpec, HoeffdingCoverage, SCALING_COLUMNS, run_gap_ensemble,
                       run_p_sweep, run_error_vs_T, run_runtime_verification,
                       run_swap_experiment, run_hoeffding_coverage)
from .scaling_fit import (ScalingFit, FIT_MODELS, fit_scaling, compare_fit_families,
                          classify_gap_scaling)

__all__ = ['split_seed', 'splitmix64',
           'EnsembleSpec', 'HoeffdingCoverage', 'SCALING_COLUMNS', 'run_gap_ensemble',
           'run_p_sweep', 'run_error_vs_T', 'run_runtime_verification',
           'run_swap_experiment', 'run_hoeffding_coverage',
           'ScalingFit', 'FIT_MODELS', 'fit_scaling', 'compare_fit_families',
           'classify_gap_scaling']
