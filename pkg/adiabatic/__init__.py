"""
Adiabatic PageRank Hamiltonians, spectral gaps, evolution and the spin mapping
"""

from .hamiltonian import (HermitianOperator, AdiabaticProblem, problem_hamiltonian,
                          initial_hamiltonian, build_problem, interpolate, lambda_norm)
from .states import QuantumState, fidelity_and_error
from .spectrum import SpectralScan, gap_at, gap_scan, ground_state, lowest_eigenpairs
from .evolution import Schedule, evolve, evolution_trace
from .runtime import runtime_bound, predicted_runtime
from .spin_mapping import (SpinHamiltonianTerms, spin_terms, single_excitation_block,
                           full_space_operator, cross_sector_entries)

__all__ = ['HermitianOperator', 'AdiabaticProblem', 'problem_hamiltonian', 'initial_hamiltonian',
           'build_problem', 'interpolate', 'lambda_norm',
           'QuantumState', 'fidelity_and_error',
           'SpectralScan', 'gap_at', 'gap_scan', 'ground_state', 'lowest_eigenpairs',
           'Schedule', 'evolve', 'evolution_trace',
           'runtime_bound', 'predicted_runtime',
           'SpinHamiltonianTerms', 'spin_terms', 'single_excitation_block',
           'full_space_operator', 'cross_sector_entries']
