"""
Evolution Module
Interpolation schedules and Schrodinger evolution under h(s(t)) by midpoint
exponential steps, each exponential taken from a symmetric eigendecomposition
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import pandas as pd
from scipy.special import betainc

from core.exceptions import InvalidParam, SizeCap, StepTooCoarse
from core.settings import Defaults

from .hamiltonian import AdiabaticProblem, interpolate
from .spectrum import ground_state
from .states import QuantumState, StateLike, fidelity_and_error

logger = logging.getLogger(__name__)

SCHEDULE_KINDS = ('linear', 'smooth')


@dataclass(frozen=True)
class Schedule:
    """s(t) on [0, T]; 'smooth' has boundary_order vanishing derivatives at both ends"""

    kind: str = 'linear'
    total_time: float = 1.0
    boundary_order: int = 1

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise InvalidParam(f"schedule kind must be one of {SCHEDULE_KINDS}, got '{self.kind}'")
        if not self.total_time > 0:
            raise InvalidParam(f"total time must be positive, got {self.total_time}")
        if self.boundary_order < 1:
            raise InvalidParam(f"boundary order must be >= 1, got {self.boundary_order}")

    def s(self, t: float) -> float:
        u = min(max(t / self.total_time, 0.0), 1.0)
        if self.kind == 'linear':
            return u
        # Regularized incomplete beta I_u(a+1, a+1): a polynomial whose first a
        # derivatives vanish at u = 0 and u = 1
        a = self.boundary_order
        return float(betainc(a + 1, a + 1, u))


def _step_scale(prob: AdiabaticProblem) -> float:
    scale = max(prob.h_i.norm(), prob.h_p.norm())
    return scale if scale > 0 else 1.0


def _propagate(prob: AdiabaticProblem, schedule: Schedule, steps_per_unit: int,
               on_step: Optional[Callable[[int, float, np.ndarray], None]] = None) -> np.ndarray:
    if steps_per_unit < 1:
        raise InvalidParam(f"steps_per_unit must be >= 1, got {steps_per_unit}")
    dt_max = 1.0 / (steps_per_unit * _step_scale(prob))
    steps = max(1, math.ceil(schedule.total_time / dt_max))
    dt = schedule.total_time / steps

    h_i, delta_h = prob.h_i.matrix, prob.h_p.matrix - prob.h_i.matrix
    psi = QuantumState.uniform(prob.n).amplitudes.copy()
    for k in range(steps):
        s_mid = schedule.s((k + 0.5) * dt)
        w, vectors = np.linalg.eigh(h_i + s_mid * delta_h)
        psi = vectors @ (np.exp(-1j * dt * w) * (vectors.T @ psi))
        if on_step is not None:
            on_step(k + 1, (k + 1) * dt, psi)

    logger.debug("evolved n=%d over T=%g in %d steps", prob.n, schedule.total_time, steps)
    return psi


def _check_cap(prob: AdiabaticProblem, cap: int) -> None:
    if prob.n > cap:
        raise SizeCap(f"evolution limited to n <= {cap}, got n={prob.n}")


def evolve(prob: AdiabaticProblem, schedule: Schedule, steps_per_unit: int = Defaults.STEPS_PER_UNIT,
           cap: int = Defaults.EVOLUTION_CAP, check_step: bool = False,
           target: Optional[StateLike] = None) -> QuantumState:
    """Evolve the uniform state from s = 0 to s = 1

    With check_step the run is repeated at half the step size; if the final
    fidelity to the target (default: ground state of h_p) moves by more than
    the step tolerance, StepTooCoarse is raised.
    """
    _check_cap(prob, cap)
    psi = QuantumState(_propagate(prob, schedule, steps_per_unit))

    if check_step:
        target = ground_state(prob.h_p) if target is None else target
        finer = QuantumState(_propagate(prob, schedule, 2 * steps_per_unit))
        f_coarse, _ = fidelity_and_error(psi, target)
        f_fine, _ = fidelity_and_error(finer, target)
        if abs(f_coarse - f_fine) > Defaults.STEP_CHECK_TOL:
            raise StepTooCoarse(f"halving the step moved the fidelity by {abs(f_coarse - f_fine):.2e}; "
                                f"raise steps_per_unit above {steps_per_unit}")
    return psi


def evolution_trace(prob: AdiabaticProblem, schedule: Schedule, steps_per_unit: int = Defaults.STEPS_PER_UNIT,
                    stride: int = 10, cap: int = Defaults.EVOLUTION_CAP) -> pd.DataFrame:
    """Fidelity with the instantaneous ground state, sampled every `stride` steps"""
    _check_cap(prob, cap)
    if stride < 1:
        raise InvalidParam(f"stride must be >= 1, got {stride}")
    rows = []

    def record(step: int, t: float, psi: np.ndarray) -> None:
        s = schedule.s(t)
        f, _ = fidelity_and_error(psi, ground_state(interpolate(prob, s)))
        rows.append((t, s, f))

    record(0, 0.0, QuantumState.uniform(prob.n).amplitudes)
    final = {}

    def on_step(step: int, t: float, psi: np.ndarray) -> None:
        final['last'] = (step, t, psi)
        if step % stride == 0:
            record(step, t, psi)

    _propagate(prob, schedule, steps_per_unit, on_step)
    step, t, psi = final['last']
    if step % stride != 0:
        record(step, t, psi)
    return pd.DataFrame(rows, columns=['t', 's', 'fidelity_to_instantaneous_ground'])
