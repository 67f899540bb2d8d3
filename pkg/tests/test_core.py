"""Tests for the error hierarchy, defaults and worker pool"""

import os

import pytest

from core.exceptions import (AdiaRankError, ConfigKeyError, DataIOError, EigenFailure, InputError,
                             IoError, NoConvergence, NumericalError, ParseError, StepTooCoarse,
                             UsageError)
from core.settings import THREADS_ENV_VAR, Defaults, worker_count
from core.workers import parallel_map


def _square(x):
    return x * x


class TestExceptions:
    """Exit codes and messages of the error hierarchy"""

    @pytest.mark.parametrize("error, code", [
        (UsageError("x"), 2),
        (ConfigKeyError("x"), 2),
        (NoConvergence("x"), 3),
        (EigenFailure("x"), 3),
        (StepTooCoarse("x"), 3),
        (IoError("x"), 4),
        (ParseError("x"), 4),
    ])
    def test_exit_codes(self, error, code):
        """Each family maps to its documented exit code"""
        assert isinstance(error, AdiaRankError)
        assert error.exit_code == code

    def test_input_errors_are_value_errors(self):
        assert issubclass(InputError, ValueError)
        assert not issubclass(NumericalError, ValueError)
        assert issubclass(ParseError, DataIOError)

    def test_parse_error_names_line(self):
        """The line number is folded into the detail"""
        err = ParseError("bad token", line_num=7)
        assert err.line_num == 7
        assert err.detail == "line 7: bad token"

    def test_no_convergence_keeps_diagnostics(self):
        err = NoConvergence("slow", residual=1e-3, iterations=50)
        assert err.residual == 1e-3
        assert err.iterations == 50
        assert err.code == 'no-convergence'


class TestSettings:
    """Defaults and worker-count resolution"""

    def test_defaults(self):
        assert Defaults.ALPHA == 0.85
        assert Defaults.SCAN_GRID == 64
        assert Defaults.as_dict()['REFINE_TOL'] == 1e-6

    def test_explicit_request_wins(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        assert worker_count(5) == 5

    def test_env_var(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        assert worker_count() == 3

    def test_zero_means_auto(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "0")
        assert worker_count() == (os.cpu_count() or 1)

    def test_garbage_env_falls_back_to_auto(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "many")
        assert worker_count() == (os.cpu_count() or 1)


class TestParallelMap:
    """Order preservation with and without a pool"""

    def test_inline(self):
        assert parallel_map(_square, [3, 1, 2], workers=1) == [9, 1, 4]

    def test_pool_preserves_order(self):
        items = list(range(40))
        assert parallel_map(_square, items, workers=2) == [x * x for x in items]

    def test_empty(self):
        assert parallel_map(_square, [], workers=4) == []
