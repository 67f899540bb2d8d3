"""
Scaling Fit Module
Least-squares scaling laws of an ensemble column against system size:

    semilog        y = a + b log10(n)
    loglog         ln y = a + b ln n          (power law n^b)
    polyloglog     y = a + b ln ln n
    polylog_power  y = a (log10 n)^c          (fitted as ln y = ln a + c ln log10 n)

R^2 is reported in the transformed coordinates the fit is made in.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd

from core.exceptions import InsufficientData, InvalidParam, SingularFit

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-9
FAMILY_RANKING = ('semilog', 'loglog', 'polylog_power')
LARGE_GAP_FAMILIES = ('semilog', 'polylog_power')

Transform = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


def _semilog(x, y):
    return np.log10(x), y


def _loglog(x, y):
    return np.log(x), np.log(y)


def _polyloglog(x, y):
    return np.log(np.log(x)), y


def _polylog_power(x, y):
    return np.log(np.log10(x)), np.log(y)


TRANSFORMS: Dict[str, Transform] = {
    'semilog': _semilog,
    'loglog': _loglog,
    'polyloglog': _polyloglog,
    'polylog_power': _polylog_power,
}
FIT_MODELS = tuple(TRANSFORMS)


@dataclass(frozen=True)
class ScalingFit:
    """Fitted law; for polylog_power the coefficients are (a, c) of a (log10 n)^c"""

    model: str
    column: str
    x_column: str
    coefficients: Tuple[float, float]
    r_squared: float
    points: int

    @property
    def exponent(self) -> float:
        """Slope in the transformed coordinates (b, or c for polylog_power)"""
        return self.coefficients[1]

    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        a, b = self.coefficients
        if self.model == 'semilog':
            return a + b * np.log10(x)
        if self.model == 'loglog':
            return np.exp(a + b * np.log(x))
        if self.model == 'polyloglog':
            return a + b * np.log(np.log(x))
        return a * np.log10(x) ** b

    def describe(self) -> str:
        a, b = self.coefficients
        return f"{self.model}: a={a:.6g} b={b:.6g} R^2={self.r_squared:.4f}"

    def to_frame(self) -> pd.DataFrame:
        a, b = self.coefficients
        return pd.DataFrame([{'model': self.model, 'column': self.column, 'x_column': self.x_column,
                              'a': a, 'b': b, 'r_squared': self.r_squared, 'points': self.points}])


def _domain_check(model: str, x: np.ndarray, y: np.ndarray) -> None:
    if np.any(x <= 0):
        raise InvalidParam(f"{model} fit needs positive x values")
    if model in ('polyloglog', 'polylog_power') and np.any(x <= 1):
        raise InvalidParam(f"{model} fit needs x > 1")
    if model in ('loglog', 'polylog_power') and np.any(y <= 0):
        raise InvalidParam(f"{model} fit needs positive y values")


def fit_scaling(table: pd.DataFrame, column: str, model: str, x_column: str = 'n') -> ScalingFit:
    """Ordinary least squares of the column against x in the model's coordinates"""
    if model not in TRANSFORMS:
        raise InvalidParam(f"unknown fit model '{model}', expected one of {', '.join(FIT_MODELS)}")
    for name in (column, x_column):
        if name not in table.columns:
            raise InvalidParam(f"table has no column '{name}'")

    try:
        data = table[[x_column, column]].astype(float)
    except (TypeError, ValueError) as e:
        raise InvalidParam(f"columns '{x_column}' and '{column}' must be numeric: {e}") from e
    data = data[np.isfinite(data[x_column]) & np.isfinite(data[column])]
    if len(data) < 3:
        raise InsufficientData(f"{model} fit needs at least 3 rows, got {len(data)}")

    x, y = data[x_column].to_numpy(), data[column].to_numpy()
    _domain_check(model, x, y)
    tx, ty = TRANSFORMS[model](x, y)

    design = np.column_stack([np.ones_like(tx), tx])
    coef, _, rank, _ = np.linalg.lstsq(design, ty, rcond=None)
    if rank < 2:
        raise SingularFit(f"{model} design matrix is rank deficient (all x equal?)")

    residuals = ty - design @ coef
    scale = max(1.0, float(np.linalg.norm(design) * np.linalg.norm(ty)))
    if np.max(np.abs(design.T @ residuals)) > ORTHOGONALITY_TOL * scale:
        raise SingularFit(f"{model} residuals are not orthogonal to the design columns")

    ss_res = float(residuals @ residuals)
    ss_tot = float(np.sum((ty - ty.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    r_squared = min(max(r_squared, 0.0), 1.0)

    a, b = float(coef[0]), float(coef[1])
    if model == 'polylog_power':
        a = float(np.exp(a))
    logger.debug("fit %s of %s vs %s: a=%.6g b=%.6g R^2=%.6f", model, column, x_column, a, b, r_squared)
    return ScalingFit(model, column, x_column, (a, b), r_squared, len(data))


def compare_fit_families(table: pd.DataFrame, column: str, x_column: str = 'n') -> List[ScalingFit]:
    """semilog, loglog and polylog_power fits ranked by R^2, best first"""
    if len(table) < 4:
        raise InsufficientData(f"family comparison needs at least 4 rows, got {len(table)}")
    fits = [fit_scaling(table, column, model, x_column) for model in FAMILY_RANKING]
    return sorted(fits, key=lambda fit: -fit.r_squared)


def classify_gap_scaling(table: pd.DataFrame, column: str = 'inv_of_ave', x_column: str = 'n') -> str:
    """'large gap' when a logarithmic family wins the ranking, 'small gap' when the power law does"""
    best = compare_fit_families(table, column, x_column)[0]
    return 'large gap' if best.model in LARGE_GAP_FAMILIES else 'small gap'
