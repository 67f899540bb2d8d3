"""
Exception hierarchy
Every error carries a short machine code and the process exit code the CLI uses
"""

from typing import Optional


class AdiaRankError(Exception):
    """Base class for all adiarank errors"""

    code = 'error'
    exit_code = 1

    def __init__(self, detail: str = ''):
        super().__init__(detail)
        self.detail = detail


# ─── Input / parameter errors (exit 2) ───────────────────────────────────────

class InputError(AdiaRankError, ValueError):
    code = 'invalid-input'
    exit_code = 2


class UsageError(InputError):
    code = 'usage'


class InvalidConfig(InputError):
    code = 'invalid-config'


class ConfigKeyError(InputError):
    code = 'config-key'


class InvalidAlpha(InputError):
    code = 'invalid-alpha'


class InvalidPersonalization(InputError):
    code = 'invalid-personalization'


class InvalidParam(InputError):
    code = 'invalid-param'


class SizeMismatch(InputError):
    code = 'size-mismatch'


class DimensionMismatch(InputError):
    code = 'dimension-mismatch'


class SOutOfRange(InputError):
    code = 's-out-of-range'


class InsufficientData(InputError):
    code = 'insufficient-data'


class DegenerateScale(InputError):
    code = 'degenerate-scale'


class SizeCap(InputError):
    code = 'size-cap'


# ─── Numerical failures (exit 3) ─────────────────────────────────────────────

class NumericalError(AdiaRankError):
    code = 'numerical'
    exit_code = 3


class NoConvergence(NumericalError):
    """Power iteration hit max_iter; keeps the last residual for diagnosis"""

    code = 'no-convergence'

    def __init__(self, detail: str = '', residual: Optional[float] = None,
                 iterations: Optional[int] = None):
        super().__init__(detail)
        self.residual = residual
        self.iterations = iterations


class EigenFailure(NumericalError):
    code = 'eigen-failure'


class StepTooCoarse(NumericalError):
    code = 'step-too-coarse'


class DegenerateGround(NumericalError):
    code = 'degenerate-ground'


class SingularFit(NumericalError):
    code = 'singular-fit'


class ExcessiveExclusions(NumericalError):
    code = 'excessive-exclusions'


class SpinMappingError(NumericalError):
    code = 'spin-mapping'


# ─── File errors (exit 4) ────────────────────────────────────────────────────

class DataIOError(AdiaRankError):
    code = 'io'
    exit_code = 4


class IoError(DataIOError):
    code = 'io'


class ParseError(DataIOError):
    """Malformed file content; line_num is 1-based"""

    code = 'parse'

    def __init__(self, detail: str = '', line_num: Optional[int] = None):
        if line_num is not None:
            detail = f"line {line_num}: {detail}"
        super().__init__(detail)
        self.line_num = line_num
