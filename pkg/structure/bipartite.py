"""
Odd/even bipartiteness of tensors with respect to an index set V.

The intersection count |V ∩ {i1..im}| counts repeated indices with
multiplicity, so an entry's parity only depends on the indices that occur an
odd number of times. That makes the weak conditions an affine system over
GF(2), one equation per stored entry.
"""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional

from common.errors import InvalidIndexSetError
from common.logging_config import get_logger
from structure.gf2 import proper_subsets, solve_affine
from tensors.core import Tensor, check_dense_guard, intersection_count

logger = get_logger(__name__)


class BipartitionKind(str, Enum):
    ODD_STRICT = "odd-strict"
    ODD_WEAK = "odd-weak"
    EVEN_STRICT = "even-strict"
    EVEN_WEAK = "even-weak"

    @property
    def odd(self) -> bool:
        return self in (BipartitionKind.ODD_STRICT, BipartitionKind.ODD_WEAK)

    @property
    def strict(self) -> bool:
        return self in (BipartitionKind.ODD_STRICT, BipartitionKind.EVEN_STRICT)

    @classmethod
    def of(cls, parity: str, strict: bool) -> "BipartitionKind":
        return cls(f"{parity}-{'strict' if strict else 'weak'}")


@dataclass(frozen=True)
class Bipartition:
    """A nonempty proper index set V together with the property it witnesses."""

    V: FrozenSet[int]
    kind: BipartitionKind


def validate_index_set(V: Iterable[int], dim: int) -> FrozenSet[int]:
    """
    Normalize V to a frozenset and check that it is a nonempty proper subset of [n].

    Raises:
        InvalidIndexSetError: If V is empty, equals [n], or holds an index outside [1, n]
    """
    members = frozenset(int(i) for i in V)
    if not members:
        raise InvalidIndexSetError("Index set V must be nonempty")
    if any(not 1 <= i <= dim for i in members):
        raise InvalidIndexSetError(f"Index set {sorted(members)} leaves the range 1..{dim}")
    if len(members) == dim:
        raise InvalidIndexSetError(f"Index set {sorted(members)} is all of [{dim}], not proper")
    return members


def _stored_parity_ok(T: Tensor, V: FrozenSet[int], odd: bool) -> bool:
    want = 1 if odd else 0
    return all(intersection_count(idx, V) % 2 == want for idx in T.entries)


def odd_count_tuples(order: int, dim: int, k: int) -> int:
    """Number of index tuples whose count against a k-element set is odd."""
    return (dim ** order - (dim - 2 * k) ** order) // 2


def even_count_tuples(order: int, dim: int, k: int) -> int:
    return (dim ** order + (dim - 2 * k) ** order) // 2


def is_weakly_odd_bipartite(T: Tensor, V: Iterable[int]) -> bool:
    """True iff every stored entry has an odd intersection count with V."""
    members = validate_index_set(V, T.dim)
    return _stored_parity_ok(T, members, odd=True)


def is_weakly_even_bipartite(T: Tensor, V: Iterable[int]) -> bool:
    """True iff every stored entry has an even intersection count with V."""
    members = validate_index_set(V, T.dim)
    return _stored_parity_ok(T, members, odd=False)


def is_odd_bipartite(T: Tensor, V: Iterable[int]) -> bool:
    """
    True iff the nonzero entries sit exactly on the odd-count tuples.

    Stored entries are nonzero, so once they are all odd-count it is enough to
    compare their number with the number of odd-count tuples.

    Raises:
        GuardExceededError: If n^m exceeds the dense guard
        InvalidIndexSetError: If V is not a nonempty proper subset
    """
    members = validate_index_set(V, T.dim)
    check_dense_guard(T.order, T.dim, "Strict odd-bipartite check")
    if not _stored_parity_ok(T, members, odd=True):
        return False
    return T.nnz == odd_count_tuples(T.order, T.dim, len(members))


def is_even_bipartite(T: Tensor, V: Iterable[int]) -> bool:
    """
    True iff the nonzero entries sit exactly on the even-count tuples.

    Raises:
        GuardExceededError: If n^m exceeds the dense guard
        InvalidIndexSetError: If V is not a nonempty proper subset
    """
    members = validate_index_set(V, T.dim)
    check_dense_guard(T.order, T.dim, "Strict even-bipartite check")
    if not _stored_parity_ok(T, members, odd=False):
        return False
    return T.nnz == even_count_tuples(T.order, T.dim, len(members))


def _parity_rows(T: Tensor, rhs: int) -> List[tuple]:
    rows = []
    for idx in T.entries:
        mask = 0
        for i in idx:
            mask ^= 1 << (i - 1)
        rows.append((mask, rhs))
    return rows


def find_weak_odd_bipartitions(
    T: Tensor,
    limit: Optional[int] = None,
    outside: Iterable[int] = (),
) -> List[FrozenSet[int]]:
    """
    All index sets V making T weakly odd-bipartite, by GF(2) elimination.

    Args:
        T: Tensor to inspect
        limit: Maximum number of sets returned (None for all)
        outside: Indices V must avoid, added as equations x_i = 0

    Returns:
        Nonempty proper subsets ordered by cardinality, then lexicographically.
        An empty list certifies that no such V exists.
    """
    excluded = sorted(set(outside))
    if any(not 1 <= i <= T.dim for i in excluded):
        raise InvalidIndexSetError(f"Excluded indices {excluded} leave the range 1..{T.dim}")
    zero_rows = [(1 << (i - 1), 0) for i in excluded]
    solution = solve_affine(_parity_rows(T, 1) + zero_rows, T.dim)
    found = proper_subsets(solution, limit)
    logger.debug(f"Weak odd-bipartitions of {T!r}: {[sorted(v) for v in found]}")
    return found


def find_weak_even_bipartitions(T: Tensor, limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """Even analogue of find_weak_odd_bipartitions (a homogeneous system)."""
    solution = solve_affine(_parity_rows(T, 0), T.dim)
    found = proper_subsets(solution, limit)
    logger.debug(f"Weak even-bipartitions of {T!r}: {[sorted(v) for v in found]}")
    return found


def find_odd_bipartition(T: Tensor) -> Optional[FrozenSet[int]]:
    """
    First weak odd candidate that is also strictly odd-bipartite.

    Raises:
        GuardExceededError: If n^m exceeds the dense guard
    """
    check_dense_guard(T.order, T.dim, "Strict odd-bipartite detection")
    for candidate in find_weak_odd_bipartitions(T):
        if is_odd_bipartite(T, candidate):
            return candidate
    return None


def find_even_bipartition(T: Tensor) -> Optional[FrozenSet[int]]:
    """
    First weak even candidate that is also strictly even-bipartite.

    Raises:
        GuardExceededError: If n^m exceeds the dense guard
    """
    check_dense_guard(T.order, T.dim, "Strict even-bipartite detection")
    for candidate in find_weak_even_bipartitions(T):
        if is_even_bipartite(T, candidate):
            return candidate
    return None


def detect_bipartitions(
    T: Tensor,
    kind: BipartitionKind = BipartitionKind.ODD_WEAK,
    limit: Optional[int] = None,
) -> List[Bipartition]:
    """
    Witnesses of the requested kind, in canonical order.

    Strict kinds filter the weak candidates through the exact check.
    """
    kind = BipartitionKind(kind)
    if kind.odd:
        candidates = find_weak_odd_bipartitions(T)
        strict_check = is_odd_bipartite
    else:
        candidates = find_weak_even_bipartitions(T)
        strict_check = is_even_bipartite

    if kind.strict:
        check_dense_guard(T.order, T.dim, f"{kind.value} detection")
        candidates = [v for v in candidates if strict_check(T, v)]

    witnesses = [Bipartition(V=v, kind=kind) for v in candidates]
    return witnesses if limit is None else witnesses[:limit]
