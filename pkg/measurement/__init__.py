"""
Measurements on the quantum PageRank state
"""

from .sampling import (QuantumPageRankState, MeasurementRecord, RankCostReport,
                       quantum_state_from_pagerank, sample_sites, hoeffding_shots,
                       estimate_top_k, rank_cost_report)
from .swap_test import SwapTestResult, swap_test, format_swap_result, perturb_graph

__all__ = ['QuantumPageRankState', 'MeasurementRecord', 'RankCostReport',
           'quantum_state_from_pagerank', 'sample_sites', 'hoeffding_shots',
           'estimate_top_k', 'rank_cost_report',
           'SwapTestResult', 'swap_test', 'format_swap_result', 'perturb_graph']
