"""
Google matrix construction and classical PageRank
"""

from .google_matrix import (TransitionMatrix, StochasticMatrix, GoogleMatrix, transition_matrix,
                            patch_dangling, google_matrix, google_matrix_of, uniform_vector,
                            subdominant_eigenvalue, principal_eigenvector)
from .pagerank import (PageRankVector, pagerank_power, pagerank, inverse_pagerank, pagerank_mcmc,
                       expected_power_iterations, default_walk_length)

__all__ = ['TransitionMatrix', 'StochasticMatrix', 'GoogleMatrix', 'transition_matrix',
           'patch_dangling', 'google_matrix', 'google_matrix_of', 'uniform_vector',
           'subdominant_eigenvalue', 'principal_eigenvector',
           'PageRankVector', 'pagerank_power', 'pagerank', 'inverse_pagerank', 'pagerank_mcmc',
           'expected_power_iterations', 'default_walk_length']
