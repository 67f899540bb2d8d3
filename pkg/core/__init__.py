"""
Shared plumbing for adiarank: errors, defaults, logging and worker pools
"""

from .exceptions import AdiaRankError, InputError, NumericalError, DataIOError
from .settings import Defaults, worker_count
from .workers import parallel_map

__all__ = ['AdiaRankError', 'InputError', 'NumericalError', 'DataIOError',
           'Defaults', 'worker_count', 'parallel_map']
