"""
Quantum states on n sites and their overlaps
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from core.exceptions import DimensionMismatch, InvalidParam

NORM_TOL = 1e-9


@dataclass(frozen=True)
class QuantumState:
    """Unit-norm complex amplitude vector"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidParam(f"state norm is {norm:.12f}, expected 1")
        object.__setattr__(self, 'amplitudes', amps)

    @property
    def n(self) -> int:
        return len(self.amplitudes)

    @classmethod
    def uniform(cls, n: int) -> 'QuantumState':
        """Fully delocalized superposition sum_j |j> / sqrt(n)"""
        return cls(np.full(n, 1.0 / np.sqrt(n), dtype=np.complex128))

    @classmethod
    def from_vector(cls, vec: np.ndarray) -> 'QuantumState':
        vec = np.asarray(vec, dtype=np.complex128)
        return cls(vec / np.linalg.norm(vec))


StateLike = Union[QuantumState, np.ndarray]


def _amplitudes(state: StateLike) -> np.ndarray:
    return np.asarray(getattr(state, 'amplitudes', state), dtype=np.complex128).reshape(-1)


def fidelity_and_error(psi: StateLike, target: StateLike) -> Tuple[float, float]:
    """f = |<psi|target>| and the adiabatic error eps = sqrt(1 - f^2)"""
    a, b = _amplitudes(psi), _amplitudes(target)
    if a.shape != b.shape:
        raise DimensionMismatch(f"states have dimensions {a.size} and {b.size}")
    f = float(abs(np.vdot(a, b)))
    return f, float(np.sqrt(max(0.0, 1.0 - min(f, 1.0) ** 2)))
