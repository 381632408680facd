"""
Z-tensor decomposition A = D - C and its inverse.

D is the nonnegative diagonal part, C the nonnegative part with zero diagonal.
|A| = D + C shares the same pair.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from common.errors import (
    DimensionMismatchError,
    NegativeDiagonalError,
    PositiveOffDiagonalError,
    ZFormError,
)
from common.logging_config import get_logger
from tensors.core import Tensor

logger = get_logger(__name__)


class Sign(Enum):
    """Which of D - C and D + C to rebuild."""
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class ZDecomposition:
    """
    The (d, C) pair of a Z-tensor.

    Attributes:
        d: Diagonal entries d_i >= 0
        C: Nonnegative tensor with zero diagonal
    """

    d: np.ndarray
    C: Tensor

    @property
    def order(self) -> int:
        return self.C.order

    @property
    def dim(self) -> int:
        return self.C.dim

    def a_tensor(self) -> Tensor:
        """A = D - C."""
        return compose(self.d, self.C, Sign.MINUS)

    def abs_tensor(self) -> Tensor:
        """|A| = D + C."""
        return compose(self.d, self.C, Sign.PLUS)


def z_decompose(A: Tensor) -> ZDecomposition:
    """
    Split a Z-tensor with nonnegative diagonal into (d, C).

    Raises:
        PositiveOffDiagonalError: If an off-diagonal entry is positive
        NegativeDiagonalError: If a diagonal entry is negative
    """
    d = np.zeros(A.dim)
    c_entries = {}
    for idx, value in A.entries.items():
        if A.is_diagonal_key(idx):
            if value < 0:
                raise NegativeDiagonalError(
                    f"Diagonal entry {idx} = {value} is negative"
                )
            d[idx[0] - 1] = value
        elif value > 0:
            raise PositiveOffDiagonalError(
                f"Off-diagonal entry {idx} = {value} is positive; not a Z-tensor"
            )
        else:
            c_entries[idx] = -value

    C = Tensor(A.order, A.dim, c_entries)
    logger.debug(f"Z-decomposition: d={d.tolist()}, C has {C.nnz} entries")
    return ZDecomposition(d=d, C=C)


def is_z_form(A: Tensor) -> bool:
    """True when z_decompose(A) succeeds."""
    try:
        z_decompose(A)
    except ZFormError:
        return False
    return True


def compose(d: Sequence[float], C: Tensor, sign: Union[Sign, str] = Sign.MINUS) -> Tensor:
    """
    Rebuild D - C (sign=minus) or D + C (sign=plus).

    Raises:
        DimensionMismatchError: If len(d) != C.dim
        ZFormError: If d or C leave the decomposition's domain
    """
    sign = Sign(sign)
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.shape[0] != C.dim:
        raise DimensionMismatchError(
            f"Diagonal has length {d.shape[0]}, C has dimension {C.dim}"
        )
    if np.any(d < 0):
        raise NegativeDiagonalError(f"Diagonal vector has negative entries: {d.tolist()}")

    factor = -1.0 if sign is Sign.MINUS else 1.0
    entries = {}
    for idx, value in C.entries.items():
        if C.is_diagonal_key(idx):
            raise ZFormError(f"C has a nonzero diagonal entry at {idx}")
        if value < 0:
            raise ZFormError(f"C has a negative entry at {idx}")
        entries[idx] = factor * value
    for i, value in enumerate(d, start=1):
        entries[(i,) * C.order] = value
    return Tensor(C.order, C.dim, entries)
