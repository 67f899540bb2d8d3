"""
Configuration files and CSV result tables
"""

from .data_loader import (ConfigLoader, EnsembleConfigKeys, ResultReader, ResultWriter,
                          config_hash, emit_csv)

__all__ = ['ConfigLoader', 'EnsembleConfigKeys', 'ResultReader', 'ResultWriter',
           'config_hash', 'emit_csv']
