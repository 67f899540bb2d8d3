"""
Data Loader Module
Handles ensemble configuration files and the CSV result tables written by every command
"""

import hashlib
import logging
import os
import sys
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from core.exceptions import ConfigKeyError, InvalidConfig, IoError, ParseError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'
HASH_PREFIX = 'config-hash='
STDOUT = '-'

# Trailer keys may be a tuple of names written together on one comment line
Trailer = Dict[Union[str, Tuple[str, ...]], object]


def _parse_int(raw: str) -> int:
    return int(raw, 0)


def parse_size_list(raw: str) -> List[int]:
    """'4,8,16' or the power-of-two range '2^2..2^9'"""
    raw = raw.replace(' ', '')
    if '..' in raw:
        lo, hi = raw.split('..', 1)
        if not (lo.startswith('2^') and hi.startswith('2^')):
            raise ValueError("ranges must be written 2^a..2^b")
        return [2 ** k for k in range(int(lo[2:]), int(hi[2:]) + 1)]
    return [int(tok) for tok in raw.split(',') if tok]


def parse_float_list(raw: str) -> List[float]:
    """'10,100,1000' or the log-spaced range 'lo..hi:count'"""
    raw = raw.replace(' ', '')
    if '..' in raw:
        span, _, count = raw.partition(':')
        lo, hi = (float(x) for x in span.split('..', 1))
        if lo <= 0 or hi <= lo:
            raise ValueError("log-spaced range needs 0 < lo < hi")
        return [float(x) for x in np.logspace(np.log10(lo), np.log10(hi), int(count or 8))]
    return [float(tok) for tok in raw.split(',') if tok]


class EnsembleConfigKeys:
    """Accepted keys of an ensemble configuration file and their value parsers"""

    MODEL_ALIASES = {
        'pa': 'preferential_attachment',
        'reverse': 'reverse_of',
    }

    PARSERS: Dict[str, Callable[[str], object]] = {
        'model': str,
        'base': str,
        'n_list': parse_size_list,
        'trials': _parse_int,
        'seed': _parse_int,
        'alpha': float,
        'scan.grid': _parse_int,
        'scan.refine_tol': float,
        'evolve.steps_per_unit': _parse_int,
        'mix_ratio': float,
        'p_copy': float,
        'm': _parse_int,
        'd0': _parse_int,
        'b': _parse_int,
        'eps_target': float,
        't_grid': parse_float_list,
    }

    @classmethod
    def is_known(cls, key: str) -> bool:
        return key in cls.PARSERS

    @classmethod
    def parse_value(cls, key: str, raw: str) -> object:
        """Convert a raw value for a known key"""
        value = cls.PARSERS[key](raw)
        if key in ('model', 'base'):
            value = cls.canonical_model(value)
        return value

    @classmethod
    def canonical_model(cls, name: str) -> str:
        """Map short command-line model names to their full names"""
        return cls.MODEL_ALIASES.get(name, name)


def _canonical(value: object) -> str:
    if isinstance(value, (list, tuple)):
        return ','.join(_canonical(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_hash(values: Dict[str, object]) -> str:
    """First 16 hex digits of SHA-256 over the sorted key=value lines"""
    canonical = '\n'.join(f"{key}={_canonical(values[key])}" for key in sorted(values))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


class ConfigLoader:
    """Reads flat 'key = value' ensemble configuration files"""

    def parse_config_file(self, file_path: str) -> Dict[str, object]:
        """Parse a configuration file; unknown keys and malformed lines are errors"""
        try:
            with open(file_path, 'r', encoding='utf-8') as file:
                lines = file.readlines()
        except OSError as e:
            raise IoError(f"cannot read config {file_path}: {e.strerror or e}") from e
        values = self.parse_config_lines(lines)
        logger.info("Loaded %d config keys from %s", len(values), file_path)
        return values

    def parse_config_lines(self, lines: Iterable[str]) -> Dict[str, object]:
        values: Dict[str, object] = {}
        for line_num, line in enumerate(lines, 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue

            key, sep, raw = line.partition('=')
            key, raw = key.strip(), raw.strip()
            if not sep or not key:
                raise ParseError(f"expected 'key = value', got '{line}'", line_num)
            if not EnsembleConfigKeys.is_known(key):
                raise ConfigKeyError(f"unknown config key '{key}' (line {line_num})")
            if key in values:
                logger.warning("Config key %s repeated on line %d; last value wins", key, line_num)

            try:
                values[key] = EnsembleConfigKeys.parse_value(key, raw)
            except ValueError as e:
                raise InvalidConfig(f"bad value for '{key}' on line {line_num}: {e}") from e
        return values

    @staticmethod
    def merge(file_values: Dict[str, object], overrides: Dict[str, object]) -> Dict[str, object]:
        """Flags win over the file; None overrides are ignored"""
        merged = dict(file_values)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return merged


class ResultWriter:
    """Writes result tables as CSV with a config-hash comment line"""

    @staticmethod
    def format_table(table: pd.DataFrame, config_digest: Optional[str] = None,
                     trailer: Optional[Trailer] = None) -> str:
        text = table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        if config_digest:
            text = f"# {HASH_PREFIX}{config_digest}\n" + text
        for key, value in (trailer or {}).items():
            pairs = zip(key, value) if isinstance(key, tuple) else [(key, value)]
            text += "# " + ' '.join(f"{k}={_canonical(v)}" for k, v in pairs) + "\n"
        return text

    def write_table(self, table: pd.DataFrame, path: str = STDOUT, config_digest: Optional[str] = None,
                    trailer: Optional[Trailer] = None) -> None:
        """Write to a file path, or to stdout for '-'"""
        text = self.format_table(table, config_digest, trailer)
        if path in (None, STDOUT):
            sys.stdout.write(text)
            return
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='') as file:
                file.write(text)
        except OSError as e:
            raise IoError(f"cannot write {path}: {e.strerror or e}") from e
        logger.info("Wrote %d rows to %s", len(table), path)


class ResultReader:
    """Reads tables written by ResultWriter back into DataFrames"""

    def read_table(self, path: str) -> pd.DataFrame:
        if not os.path.exists(path):
            raise IoError(f"no such file: {path}")
        try:
            return pd.read_csv(path, comment='#')
        except pd.errors.ParserError as e:
            raise ParseError(f"{path}: {e}") from e
        except pd.errors.EmptyDataError as e:
            raise ParseError(f"{path}: no table found") from e
        except OSError as e:
            raise IoError(f"cannot read {path}: {e.strerror or e}") from e

    @staticmethod
    def read_config_hash(path: str) -> Optional[str]:
        """The config hash recorded in the file, if any"""
        try:
            with open(path, 'r', encoding='utf-8') as file:
                for line in file:
                    if not line.startswith('#'):
                        break
                    body = line[1:].strip()
                    if body.startswith(HASH_PREFIX):
                        return body[len(HASH_PREFIX):]
        except OSError as e:
            raise IoError(f"cannot read {path}: {e.strerror or e}") from e
        return None


def emit_csv(table: pd.DataFrame, path: str = STDOUT, config_digest: Optional[str] = None,
             trailer: Optional[Dict[str, object]] = None) -> None:
    """Write a result table (or a fit's one-row frame) as CSV"""
    if hasattr(table, 'to_frame') and not isinstance(table, pd.DataFrame):
        table = table.to_frame()
    ResultWriter().write_table(table, path, config_digest, trailer)
