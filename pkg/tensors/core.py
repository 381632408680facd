"""
Sparse real tensors and the multilinear operations every other package uses.

A tensor of order m and dimension n is stored as a map from 1-based index
tuples to nonzero reals. Entries are literal positions: nothing is
symmetrized, and a zero value means the entry is absent.
"""

import itertools
import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from common.config import config
from common.errors import (
    DimensionMismatchError,
    DuplicateEntryError,
    GuardExceededError,
    IndexOutOfRangeError,
    TensorInputError,
)
from common.logging_config import get_logger

logger = get_logger(__name__)

IndexTuple = Tuple[int, ...]
IndexSet = frozenset


class Tensor:
    """
    Immutable sparse tensor.

    Attributes:
        order: m >= 2
        dim: n >= 1
        entries: read-only mapping from 1-based index tuples to nonzero values
    """

    __slots__ = ("_order", "_dim", "_entries", "_idx", "_vals")

    def __init__(self, order: int, dim: int, entries: Mapping[IndexTuple, float]):
        if order < 2:
            raise TensorInputError(f"Tensor order must be >= 2, got {order}")
        if dim < 1:
            raise TensorInputError(f"Tensor dimension must be >= 1, got {dim}")

        cleaned = {}
        for idx, value in entries.items():
            key = _check_index(tuple(idx), order, dim)
            value = float(value)
            if not math.isfinite(value):
                raise TensorInputError(f"Entry {key} is not finite: {value}")
            if value != 0.0:
                cleaned[key] = value

        keys = sorted(cleaned)
        self._order = order
        self._dim = dim
        self._entries = MappingProxyType({k: cleaned[k] for k in keys})
        # 0-based index matrix (nnz x m) and value vector for vectorized evaluation
        self._idx = np.array(keys, dtype=np.int64).reshape(len(keys), order) - 1
        self._vals = np.array([cleaned[k] for k in keys], dtype=float)
        self._idx.setflags(write=False)
        self._vals.setflags(write=False)

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def entries(self) -> Mapping[IndexTuple, float]:
        return self._entries

    @property
    def nnz(self) -> int:
        """Number of stored (nonzero) entries."""
        return len(self._entries)

    @property
    def index_array(self) -> np.ndarray:
        """Stored index tuples as a 0-based (nnz, m) integer array, lexicographically sorted."""
        return self._idx

    @property
    def values(self) -> np.ndarray:
        """Stored values aligned with index_array."""
        return self._vals

    def entry(self, idx: Sequence[int]) -> float:
        """Value at a 1-based index tuple (0.0 when absent)."""
        key = _check_index(tuple(idx), self._order, self._dim)
        return self._entries.get(key, 0.0)

    def diagonal(self) -> np.ndarray:
        """Diagonal entries t_{i...i} as a length-n vector."""
        return np.array(
            [self._entries.get((i,) * self._order, 0.0) for i in range(1, self._dim + 1)]
        )

    def is_nonnegative(self) -> bool:
        return bool(np.all(self._vals >= 0.0))

    def is_diagonal_key(self, idx: IndexTuple) -> bool:
        return all(i == idx[0] for i in idx)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self._order == other._order
            and self._dim == other._dim
            and dict(self._entries) == dict(other._entries)
        )

    def __hash__(self) -> int:
        return hash((self._order, self._dim, tuple(self._entries.items())))

    def __repr__(self) -> str:
        return f"Tensor(order={self._order}, dim={self._dim}, nnz={self.nnz})"

    def _check_same_shape(self, other: "Tensor") -> None:
        if self._order != other._order or self._dim != other._dim:
            raise DimensionMismatchError(
                f"Shape mismatch: ({self._order}, {self._dim}) vs ({other._order}, {other._dim})"
            )

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same_shape(other)
        merged = dict(self._entries)
        for key, value in other._entries.items():
            merged[key] = merged.get(key, 0.0) + value
        return Tensor(self._order, self._dim, merged)

    def __neg__(self) -> "Tensor":
        return Tensor(self._order, self._dim, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, scalar: float) -> "Tensor":
        return Tensor(self._order, self._dim, {k: scalar * v for k, v in self._entries.items()})

    __rmul__ = __mul__


def _check_index(idx: IndexTuple, order: int, dim: int) -> IndexTuple:
    if len(idx) != order:
        raise IndexOutOfRangeError(f"Index tuple {idx} has length {len(idx)}, expected {order}")
    for i in idx:
        if isinstance(i, bool) or int(i) != i or not 1 <= i <= dim:
            raise IndexOutOfRangeError(f"Index tuple {idx} leaves the range 1..{dim}")
    return tuple(int(i) for i in idx)


def make_tensor(
    order: int,
    dim: int,
    raw_entries: Iterable[Tuple[Sequence[int], float]],
) -> Tensor:
    """
    Build a tensor from (index tuple, value) pairs.

    Zero values are dropped. A tuple repeated with the same value is accepted
    once; repeated with a different value it is an error.

    Args:
        order: Tensor order m >= 2
        dim: Tensor dimension n >= 1
        raw_entries: Iterable of (1-based index tuple, value)

    Returns:
        Tensor holding the nonzero entries verbatim

    Raises:
        IndexOutOfRangeError: If a tuple has the wrong length or leaves [1, n]
        DuplicateEntryError: If a tuple is given twice with conflicting values
    """
    collected = {}
    for idx, value in raw_entries:
        key = _check_index(tuple(idx), order, dim)
        value = float(value)
        if key in collected and collected[key] != value:
            raise DuplicateEntryError(
                f"Index tuple {key} given twice with values {collected[key]} and {value}"
            )
        collected[key] = value
    tensor = Tensor(order, dim, collected)
    logger.debug(f"Built {tensor!r} from {len(collected)} raw entries")
    return tensor


def _as_vector(tensor: Tensor, x: Sequence[float]) -> np.ndarray:
    vec = np.asarray(x, dtype=float).reshape(-1)
    if vec.shape[0] != tensor.dim:
        raise DimensionMismatchError(
            f"Vector length {vec.shape[0]} does not match tensor dimension {tensor.dim}"
        )
    return vec


def apply(tensor: Tensor, x: Sequence[float]) -> np.ndarray:
    """
    Evaluate T x^{m-1}.

    Component i is the sum over stored entries t_{i i2...im} x_{i2}...x_{im}.

    Raises:
        DimensionMismatchError: If len(x) != n
    """
    vec = _as_vector(tensor, x)
    if tensor.nnz == 0:
        return np.zeros(tensor.dim)
    idx = tensor.index_array
    terms = tensor.values * np.prod(vec[idx[:, 1:]], axis=1)
    return np.bincount(idx[:, 0], weights=terms, minlength=tensor.dim)


def apply_jacobian(tensor: Tensor, x: Sequence[float]) -> np.ndarray:
    """Jacobian of x -> T x^{m-1}, an (n, n) matrix."""
    vec = _as_vector(tensor, x)
    n, m = tensor.dim, tensor.order
    jac = np.zeros((n, n))
    if tensor.nnz == 0:
        return jac
    idx = tensor.index_array
    factors = vec[idx[:, 1:]]
    for p in range(m - 1):
        others = np.prod(np.delete(factors, p, axis=1), axis=1) if m > 2 else np.ones(len(idx))
        np.add.at(jac, (idx[:, 0], idx[:, p + 1]), tensor.values * others)
    return jac


def power_form(tensor: Tensor, x: Sequence[float]) -> float:
    """
    Evaluate the scalar form T x^m over stored entries.

    Raises:
        DimensionMismatchError: If len(x) != n
    """
    vec = _as_vector(tensor, x)
    if tensor.nnz == 0:
        return 0.0
    return float(np.sum(tensor.values * np.prod(vec[tensor.index_array], axis=1)))


def residual(tensor: Tensor, lam: float, x: Sequence[float]) -> float:
    """
    Scaled eigen-residual of (lam, x).

    Returns ||T x^{m-1} - lam x^{[m-1]}||_inf / max(1, ||x||_inf^{m-1}).
    """
    vec = _as_vector(tensor, x)
    m = tensor.order
    diff = apply(tensor, vec) - lam * vec ** (m - 1)
    scale = max(1.0, float(np.max(np.abs(vec))) ** (m - 1))
    return float(np.max(np.abs(diff))) / scale


def abs_tensor(tensor: Tensor) -> Tensor:
    """Entrywise absolute value |T| with the same sparsity pattern."""
    return Tensor(tensor.order, tensor.dim, {k: abs(v) for k, v in tensor.entries.items()})


def principal_subtensor(tensor: Tensor, members: Iterable[int]) -> Tensor:
    """
    Entries whose indices all lie in members, renumbered 1..k in sorted order.

    Raises:
        TensorInputError: If members is empty or leaves 1..n
    """
    kept = sorted(set(members))
    if not kept or kept[0] < 1 or kept[-1] > tensor.dim:
        raise TensorInputError(f"Index set {kept} is not a nonempty subset of 1..{tensor.dim}")
    position = {i: p + 1 for p, i in enumerate(kept)}
    return Tensor(tensor.order, len(kept), {
        tuple(position[i] for i in idx): value
        for idx, value in tensor.entries.items()
        if all(i in position for i in idx)
    })


def identity_tensor(order: int, dim: int) -> Tensor:
    """The unit tensor I: ones on the diagonal, zero elsewhere."""
    return Tensor(order, dim, {(i,) * order: 1.0 for i in range(1, dim + 1)})


def shift(tensor: Tensor, a: float, b: float) -> Tensor:
    """
    Return a(B + bI).

    Eigenpairs map as (lam, x) -> (a(lam + b), x); a = 0 gives the zero tensor.
    """
    shifted = dict(tensor.entries)
    for i in range(1, tensor.dim + 1):
        key = (i,) * tensor.order
        shifted[key] = shifted.get(key, 0.0) + b
    return Tensor(tensor.order, tensor.dim, {k: a * v for k, v in shifted.items()})


def is_symmetric(tensor: Tensor, tol: Optional[float] = None) -> bool:
    """True when every stored value is invariant under index permutation."""
    tol = config.ALGEBRAIC_TOL if tol is None else tol
    entries = tensor.entries
    for key, value in entries.items():
        for perm in set(itertools.permutations(key)):
            if abs(entries.get(perm, 0.0) - value) > tol:
                return False
    return True


def intersection_count(idx: Sequence[int], index_set: Iterable[int]) -> int:
    """Number of positions of idx whose index lies in the set, counted with multiplicity."""
    members = set(index_set)
    return sum(1 for i in idx if i in members)


def dense_tuple_count(order: int, dim: int) -> int:
    return dim ** order


def check_dense_guard(order: int, dim: int, what: str) -> None:
    """Raise GuardExceededError when n^m exceeds the dense-iteration guard."""
    count = dense_tuple_count(order, dim)
    if count > config.DENSE_GUARD:
        raise GuardExceededError(
            f"{what} needs all {dim}^{order} = {count} index tuples "
            f"(guard {config.DENSE_GUARD})"
        )


def all_index_tuples(order: int, dim: int) -> Iterable[IndexTuple]:
    """Every 1-based index tuple in lexicographic order (guarded)."""
    check_dense_guard(order, dim, "Dense enumeration")
    return itertools.product(range(1, dim + 1), repeat=order)


@dataclass(frozen=True)
class EigenPair:
    """
    A real eigenpair (lam, x) of T x^{m-1} = lam x^{[m-1]}.

    residual is the scaled residual of `residual()`; it is NaN for pairs
    produced by a pure vector transform that nobody has re-validated yet.
    """

    lam: float
    x: np.ndarray
    residual: float
    iterations: int = 0
    method: str = "unknown"
    converged: bool = True
    brackets: Tuple[Tuple[float, float], ...] = field(default=(), repr=False)

    def revalidated(self, tensor: Tensor) -> "EigenPair":
        """Copy of this pair with the residual recomputed against tensor."""
        return replace(self, residual=residual(tensor, self.lam, self.x))
