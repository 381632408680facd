"""
Diagonal similarity B = P^{-(m-1)} A P for a nonsingular diagonal P = diag(p).

With P diagonal the entry formula collapses to
    b_{i1...im} = a_{i1...im} * p_{i1}^{-(m-1)} * p_{i2} ... p_{im}
so the sparsity pattern is preserved.
"""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np

from common.config import config
from common.errors import (
    DimensionMismatchError,
    NotWeaklyIrreducibleError,
    NotZTensorError,
    ZeroScalingError,
    ZFormError,
)
from common.logging_config import get_logger
from structure.bipartite import find_weak_odd_bipartitions
from structure.graphs import is_weakly_irreducible
from tensors.core import Tensor
from tensors.zform import z_decompose

logger = get_logger(__name__)


@dataclass(frozen=True)
class SimilarityWitness:
    """Diagonal of P, and the bipartition it was built from when it is a sign pattern."""

    p: Tuple[float, ...]
    restricted_to_signs: bool = True
    V: Optional[FrozenSet[int]] = None


def _scaling_vector(p: Sequence[float], dim: int) -> np.ndarray:
    vec = np.asarray(p, dtype=float).reshape(-1)
    if vec.shape[0] != dim:
        raise DimensionMismatchError(f"Scaling vector has length {vec.shape[0]}, expected {dim}")
    if np.any(vec == 0.0):
        raise ZeroScalingError(f"Scaling vector {vec.tolist()} has a zero component")
    return vec


def diag_similar_transform(A: Tensor, p: Sequence[float]) -> Tensor:
    """
    Return P^{-(m-1)} A P for P = diag(p).

    Raises:
        ZeroScalingError: If some p_i = 0
        DimensionMismatchError: If len(p) != n
    """
    vec = _scaling_vector(p, A.dim)
    m = A.order
    entries = {}
    for idx, value in A.entries.items():
        factor = vec[idx[0] - 1] ** (-(m - 1))
        for i in idx[1:]:
            factor *= vec[i - 1]
        entries[idx] = value * factor
    return Tensor(m, A.dim, entries)


def verify_similarity(A: Tensor, B: Tensor, p: Sequence[float], tol: Optional[float] = None) -> bool:
    """
    True iff diag_similar_transform(B, p) matches A entrywise within tol.

    tol defaults to 0 for sign vectors (the arithmetic is exact) and to the
    algebraic tolerance otherwise.

    Raises:
        DimensionMismatchError: If A and B differ in order or dimension
    """
    if A.order != B.order or A.dim != B.dim:
        raise DimensionMismatchError(
            f"Shape mismatch: ({A.order}, {A.dim}) vs ({B.order}, {B.dim})"
        )
    vec = _scaling_vector(p, A.dim)
    if tol is None:
        tol = 0.0 if np.all(np.abs(vec) == 1.0) else config.ALGEBRAIC_TOL

    transformed = diag_similar_transform(B, vec)
    keys = set(A.entries) | set(transformed.entries)
    worst = max((abs(A.entries.get(k, 0.0) - transformed.entries.get(k, 0.0)) for k in keys), default=0.0)
    return worst <= tol


def find_sign_similarity(A: Tensor) -> Optional[SimilarityWitness]:
    """
    A sign matrix P with A = P^{-(m-1)} |A| P, if one exists.

    Under weak irreducibility of C it exists exactly when m is even and C is
    weakly odd-bipartite; p is -1 on the detector's first witness V.

    Raises:
        NotZTensorError: If A is not a Z-tensor with nonnegative diagonal
        NotWeaklyIrreducibleError: If C is not weakly irreducible
    """
    try:
        decomposition = z_decompose(A)
    except ZFormError as e:
        raise NotZTensorError(str(e)) from e
    C = decomposition.C
    if not is_weakly_irreducible(C):
        raise NotWeaklyIrreducibleError(f"C of {A!r} is not weakly irreducible")

    if A.order % 2 == 1:
        logger.debug(f"{A!r} has odd order; A and |A| are not diagonal similar")
        return None

    candidates = find_weak_odd_bipartitions(C, limit=1)
    if not candidates:
        return None

    V = candidates[0]
    p = tuple(-1.0 if i in V else 1.0 for i in range(1, A.dim + 1))
    if not verify_similarity(A, decomposition.abs_tensor(), p, tol=0.0):
        logger.warning(f"Sign pattern from V={sorted(V)} failed exact verification on {A!r}")
        return None
    logger.info(f"{A!r} is sign-similar to |A| with p={p}")
    return SimilarityWitness(p=p, restricted_to_signs=True, V=V)
