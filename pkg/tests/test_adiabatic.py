"""Tests for PageRank Hamiltonians, gap scans, evolution and run-time formulas"""

import math

import numpy as np
import pytest

from adiabatic import (AdiabaticProblem, HermitianOperator, QuantumState, Schedule, build_problem,
                       evolution_trace, evolve, fidelity_and_error, gap_at, gap_scan, ground_state,
                       initial_hamiltonian, interpolate, lambda_norm, lowest_eigenpairs,
                       predicted_runtime, problem_hamiltonian, runtime_bound)
from core.exceptions import (DegenerateGround, DimensionMismatch, EigenFailure, InvalidParam,
                             SizeCap, SOutOfRange)
from googlerank import google_matrix_of, pagerank_power
from webgraph import GraphModelConfig, generate_graph

from test_googlerank import random_graphs


@pytest.fixture
def cycle_problem(two_cycle):
    return build_problem(google_matrix_of(two_cycle))


@pytest.fixture
def dangling_problem(dangling_pair):
    return build_problem(google_matrix_of(dangling_pair))


class TestHamiltonians:
    """h = (I - G)^T (I - G) and the interpolation"""

    def test_dangling_pair_problem_hamiltonian(self, dangling_pair):
        h_p = problem_hamiltonian(google_matrix_of(dangling_pair))
        assert np.allclose(h_p.matrix, [[1.71125, -0.925], [-0.925, 0.5]], atol=1e-12)

    def test_initial_is_projector(self):
        h_i = initial_hamiltonian(5)
        assert np.allclose(h_i.matrix, np.eye(5) - np.full((5, 5), 0.2), atol=1e-12)

    def test_initial_without_self_loops(self):
        h_i = initial_hamiltonian(5, with_self_loops=False)
        assert h_i.is_psd()
        assert np.allclose(h_i.matrix @ np.ones(5), 0.0, atol=1e-12)

    def test_problem_is_psd_with_pagerank_kernel(self, pa_graph):
        G = google_matrix_of(pa_graph)
        h_p = problem_hamiltonian(G)
        assert h_p.is_psd()
        p = pagerank_power(G).p
        assert np.linalg.norm(h_p.matrix @ p) < 1e-10

    def test_interpolation_endpoints(self, dangling_problem):
        assert np.allclose(interpolate(dangling_problem, 0.0).matrix, dangling_problem.h_i.matrix)
        assert np.allclose(interpolate(dangling_problem, 1.0).matrix, dangling_problem.h_p.matrix)

    @pytest.mark.parametrize("s", [-0.01, 1.5])
    def test_s_out_of_range(self, dangling_problem, s):
        with pytest.raises(SOutOfRange):
            interpolate(dangling_problem, s)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            AdiabaticProblem(initial_hamiltonian(2), initial_hamiltonian(3))

    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidParam):
            HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_lambda_two_cycle(self, cycle_problem):
        assert lambda_norm(cycle_problem) == pytest.approx(2.4225, abs=1e-12)


class TestSpectrum:
    """Gaps, the minimum-gap scan and ground states"""

    def test_two_cycle_gap_is_linear(self, cycle_problem):
        for s in (0.0, 0.3, 0.5, 1.0):
            assert gap_at(cycle_problem, s) == pytest.approx(1.0 + 2.4225 * s, abs=1e-10)

    def test_two_cycle_scan(self, cycle_problem):
        scan = gap_scan(cycle_problem)
        assert scan.delta_min == pytest.approx(1.0, abs=1e-9)
        assert scan.s_star == pytest.approx(0.0, abs=1e-6)
        assert len(scan.grid) == 64
        assert not scan.degenerate

    def test_dangling_pair_scan(self, dangling_problem):
        scan = gap_scan(dangling_problem, grid_points=32)
        assert scan.delta_min == pytest.approx(1.0, abs=1e-9)

    def test_scan_matches_dense_grid(self, mixed_graph):
        prob = build_problem(google_matrix_of(mixed_graph))
        scan = gap_scan(prob)
        fine = min(gap_at(prob, float(s)) for s in np.linspace(0, 1, 1001))
        assert scan.delta_min <= fine * 1.01 + 1e-6
        assert scan.delta_min >= 0

    def test_grid_too_coarse(self, cycle_problem):
        with pytest.raises(InvalidParam):
            gap_scan(cycle_problem, grid_points=4)

    def test_single_level(self):
        with pytest.raises(EigenFailure):
            lowest_eigenpairs(HermitianOperator(np.eye(1)))

    def test_ground_state_is_pagerank_direction(self):
        """ground_state(h_p) equals p / ||p||_2 on random graphs"""
        for g in random_graphs(30, seed=4):
            G = google_matrix_of(g)
            p = pagerank_power(G).p
            psi = ground_state(problem_hamiltonian(G)).amplitudes
            assert np.linalg.norm(psi - p / np.linalg.norm(p)) < 1e-8

    def test_ground_state_sign(self, dangling_pair):
        psi = ground_state(problem_hamiltonian(google_matrix_of(dangling_pair))).amplitudes
        assert (psi.real > 0).all()

    def test_degenerate_ground(self):
        with pytest.raises(DegenerateGround):
            ground_state(HermitianOperator(np.eye(3)))


class TestSchedule:
    """Linear and smooth interpolation schedules"""

    def test_linear(self):
        sched = Schedule('linear', 10.0)
        assert sched.s(0.0) == 0.0
        assert sched.s(2.5) == 0.25
        assert sched.s(10.0) == 1.0

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_smooth_endpoints_and_symmetry(self, order):
        sched = Schedule('smooth', 4.0, order)
        assert sched.s(0.0) == pytest.approx(0.0)
        assert sched.s(4.0) == pytest.approx(1.0)
        assert sched.s(2.0) == pytest.approx(0.5)
        assert sched.s(1.0) + sched.s(3.0) == pytest.approx(1.0)

    def test_smooth_is_flat_at_the_ends(self):
        sched = Schedule('smooth', 1.0, 2)
        assert sched.s(1e-3) < 1e-6

    @pytest.mark.parametrize("kwargs", [{'kind': 'cubic'}, {'total_time': 0.0}, {'boundary_order': 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParam):
            Schedule(**kwargs)


class TestEvolution:
    """Midpoint exponential integration of the interpolation"""

    def test_two_cycle_stays_in_ground_state(self, cycle_problem):
        psi = evolve(cycle_problem, Schedule('linear', 5.0))
        f, eps = fidelity_and_error(psi, ground_state(cycle_problem.h_p))
        assert f == pytest.approx(1.0, abs=1e-9)
        assert eps < 1e-4

    def test_slow_evolution_reaches_pagerank(self, dangling_problem):
        psi = evolve(dangling_problem, Schedule('linear', 500.0))
        _, eps = fidelity_and_error(psi, ground_state(dangling_problem.h_p))
        assert eps < 0.02

    def test_zero_time_limit(self, dangling_problem):
        psi = evolve(dangling_problem, Schedule('linear', 1e-9))
        target = ground_state(dangling_problem.h_p)
        _, eps = fidelity_and_error(psi, target)
        _, eps0 = fidelity_and_error(QuantumState.uniform(2), target)
        assert eps == pytest.approx(eps0, abs=1e-6)

    def test_norm_preserved(self, mixed_graph):
        prob = build_problem(google_matrix_of(mixed_graph))
        psi = evolve(prob, Schedule('smooth', 20.0, 2))
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-9)

    def test_step_check_passes_for_fine_steps(self, cycle_problem):
        evolve(cycle_problem, Schedule('linear', 5.0), check_step=True)

    def test_size_cap(self, mixed_graph):
        prob = build_problem(google_matrix_of(mixed_graph))
        with pytest.raises(SizeCap):
            evolve(prob, Schedule('linear', 1.0), cap=4)

    def test_trace(self, dangling_problem):
        trace = evolution_trace(dangling_problem, Schedule('linear', 20.0), stride=7)
        assert list(trace.columns) == ['t', 's', 'fidelity_to_instantaneous_ground']
        assert trace['t'].iloc[0] == 0.0
        assert trace['fidelity_to_instantaneous_ground'].iloc[0] == pytest.approx(1.0)
        assert trace['t'].iloc[-1] == pytest.approx(20.0)
        assert trace['s'].iloc[-1] == pytest.approx(1.0)
        assert trace['t'].is_monotonic_increasing


class TestRuntime:
    """Run-time bound and the predicted run time"""

    def test_bound(self):
        assert runtime_bound(2.0, 0.5, 0.1) == pytest.approx(80.0)
        assert runtime_bound(2.0, 0.5, 0.1, a=1, b=3) == pytest.approx(2.0 ** 2 / (0.1 * 0.125))

    @pytest.mark.parametrize("args", [(0.0, 0.5, 0.1), (1.0, -1.0, 0.1), (1.0, 0.5, 0.0)])
    def test_bound_rejects_nonpositive(self, args):
        with pytest.raises(InvalidParam):
            runtime_bound(*args)

    def test_predicted(self):
        assert predicted_runtime(16, 0.1, 2) == pytest.approx(783.93, rel=1e-4)

    def test_predicted_formula(self):
        n, eps, b = 20, 0.2, 3
        expected = eps ** -2 * math.log(math.log(n)) ** (b - 1) * math.log(n) ** b
        assert predicted_runtime(n, eps, b) == pytest.approx(expected)

    @pytest.mark.parametrize("args", [(2, 0.1, 2), (16, 1.0, 2), (16, 0.1, 0)])
    def test_predicted_domain(self, args):
        with pytest.raises(InvalidParam):
            predicted_runtime(*args)
