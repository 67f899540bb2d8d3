"""
Spin Mapping Module
Local spin form H = sum_i h_ii s+_i s-_i + sum_{i<j} h_ij (s+_i s-_j + s+_j s-_i) of an
n-site Hamiltonian, and its single-excitation block (basis |i> <-> qubit i up)
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from core.exceptions import DimensionMismatch, SizeCap, SpinMappingError
from core.settings import Defaults

from .hamiltonian import HermitianOperator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpinHamiltonianTerms:
    """On-site coefficients h_ii and hopping coefficients h_ij (i < j); exact zeros omitted"""

    n: int
    diagonal: Dict[int, float] = field(default_factory=dict)
    hopping: Dict[Tuple[int, int], float] = field(default_factory=dict)

    @property
    def term_count(self) -> int:
        return len(self.diagonal) + len(self.hopping)


def spin_terms(h: Union[HermitianOperator, np.ndarray]) -> SpinHamiltonianTerms:
    """Read the spin coefficients straight off the matrix entries"""
    matrix = h.matrix if isinstance(h, HermitianOperator) else HermitianOperator(h).matrix
    n = matrix.shape[0]
    diagonal = {i: float(matrix[i, i]) for i in range(n) if matrix[i, i] != 0}
    rows, cols = np.triu_indices(n, k=1)
    hopping = {(int(i), int(j)): float(matrix[i, j]) for i, j in zip(rows, cols) if matrix[i, j] != 0}
    return SpinHamiltonianTerms(n, diagonal, hopping)


def _excitation_numbers(n: int) -> np.ndarray:
    states = np.arange(2 ** n)
    return sum((states >> i) & 1 for i in range(n)) if n else np.zeros(1, dtype=np.int64)


def full_space_operator(terms: SpinHamiltonianTerms, n: Optional[int] = None,
                        cap: int = Defaults.FULL_SPACE_CAP) -> sp.csr_matrix:
    """Sparse 2^n x 2^n spin operator; bit i of a basis index is qubit i (1 = up)"""
    n = terms.n if n is None else n
    if n > cap:
        raise SizeCap(f"full-space construction limited to n <= {cap}, got n={n}")
    dim = 2 ** n
    states = np.arange(dim)

    # s+_i s-_i is the number operator of qubit i
    diag = np.zeros(dim)
    for i, coeff in terms.diagonal.items():
        diag += coeff * ((states >> i) & 1)

    rows, cols, vals = [states], [states], [diag]
    for (i, j), coeff in terms.hopping.items():
        for up, down in ((i, j), (j, i)):
            # s+_up s-_down moves the excitation from `down` to `up`
            source = states[(((states >> down) & 1) == 1) & (((states >> up) & 1) == 0)]
            rows.append(source ^ (1 << down) ^ (1 << up))
            cols.append(source)
            vals.append(np.full(source.size, coeff))

    op = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                       shape=(dim, dim)).tocsr()
    op.eliminate_zeros()
    return op


def cross_sector_entries(op: sp.spmatrix, n: int) -> int:
    """Number of nonzeros linking different excitation-number sectors"""
    coo = op.tocoo()
    weight = _excitation_numbers(n)
    return int(np.count_nonzero(weight[coo.row] != weight[coo.col]))


def single_excitation_block(terms: SpinHamiltonianTerms, n: Optional[int] = None,
                            full_space: bool = False,
                            cap: int = Defaults.FULL_SPACE_CAP) -> HermitianOperator:
    """Rebuild the n x n single-excitation Hamiltonian

    In full-space mode the whole spin operator is assembled, checked to be
    block diagonal in the excitation number and the one-excitation block is
    cut out of it.
    """
    n = terms.n if n is None else n
    if n != terms.n:
        raise DimensionMismatch(f"terms describe {terms.n} sites, asked for {n}")

    if not full_space:
        matrix = np.zeros((n, n))
        for i, coeff in terms.diagonal.items():
            matrix[i, i] = coeff
        for (i, j), coeff in terms.hopping.items():
            matrix[i, j] = matrix[j, i] = coeff
        return HermitianOperator(matrix)

    op = full_space_operator(terms, n, cap)
    leaks = cross_sector_entries(op, n)
    if leaks:
        raise SpinMappingError(f"{leaks} entries couple different excitation sectors")
    index = 1 << np.arange(n)
    block = op[index][:, index].toarray()
    logger.debug("extracted one-excitation block from %dx%d operator", op.shape[0], op.shape[1])
    return HermitianOperator(block)
