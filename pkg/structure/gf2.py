"""
Affine linear systems over GF(2) with int-bitset rows.

Bit j of a row is the coefficient of variable j; variables are 0-based here
and map to index j + 1 of a tensor.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from common.config import config
from common.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set particular + span(basis) of an affine GF(2) system."""

    n_vars: int
    particular: int
    basis: Tuple[int, ...]

    @property
    def free_count(self) -> int:
        return len(self.basis)

    @cached_property
    def _echelon(self) -> Dict[int, int]:
        """Basis keyed by leading bit, for membership tests."""
        reduced: Dict[int, int] = {}
        for vec in self.basis:
            while vec:
                top = vec.bit_length() - 1
                if top not in reduced:
                    reduced[top] = vec
                    break
                vec ^= reduced[top]
        return reduced

    def contains(self, vec: int) -> bool:
        """True iff the bitmask vec solves the system."""
        rest = vec ^ self.particular
        while rest:
            top = rest.bit_length() - 1
            if top not in self._echelon:
                return False
            rest ^= self._echelon[top]
        return True

    def iter_solutions(self, max_free: Optional[int] = None) -> Iterator[int]:
        """
        Yield solutions as bitmasks.

        At most 2^max_free of them are produced; the remaining basis vectors
        stay fixed at 0.
        """
        basis = self.basis
        if max_free is not None and len(basis) > max_free:
            logger.warning(
                f"Affine solution space has {len(basis)} free variables; "
                f"enumerating only 2^{max_free} solutions"
            )
            basis = basis[:max_free]
        for choice in itertools.product((0, 1), repeat=len(basis)):
            vec = self.particular
            for bit, b in zip(choice, basis):
                if bit:
                    vec ^= b
            yield vec


def solve_affine(rows: Sequence[Tuple[int, int]], n_vars: int) -> Optional[AffineSolution]:
    """
    Solve {row . x = rhs} over GF(2) by Gauss-Jordan elimination.

    Args:
        rows: (coefficient bitmask, rhs bit) pairs
        n_vars: Number of variables

    Returns:
        AffineSolution, or None when the system is inconsistent
    """
    rhs_bit = 1 << n_vars
    work = [(mask & (rhs_bit - 1)) | (rhs_bit if rhs & 1 else 0) for mask, rhs in rows]

    pivots: List[Tuple[int, int]] = []  # (column, row position)
    row_idx = 0
    for col in range(n_vars):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        pivots.append((col, row_idx))
        row_idx += 1
        if row_idx == len(work):
            break

    # A zero row with rhs 1 reads 0 = 1
    for r in range(row_idx, len(work)):
        if work[r] == rhs_bit:
            logger.debug(f"GF(2) system with {len(rows)} equations is inconsistent")
            return None

    pivot_cols = {col for col, _ in pivots}
    particular = 0
    for col, r in pivots:
        if work[r] & rhs_bit:
            particular |= 1 << col

    basis = []
    for free in range(n_vars):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, r in pivots:
            if (work[r] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)

    logger.debug(
        f"GF(2) system: {len(rows)} equations, rank {len(pivots)}, {len(basis)} free variables"
    )
    return AffineSolution(n_vars=n_vars, particular=particular, basis=tuple(basis))


def mask_to_set(mask: int) -> FrozenSet[int]:
    """Bitmask -> 1-based index set."""
    return frozenset(j + 1 for j in range(mask.bit_length()) if (mask >> j) & 1)


def set_to_mask(index_set) -> int:
    """1-based index set -> bitmask."""
    mask = 0
    for i in index_set:
        mask |= 1 << (i - 1)
    return mask


def subset_order_key(index_set: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    """Cardinality first, then lexicographic."""
    return len(index_set), tuple(sorted(index_set))


# Solution spaces up to 2^_SORTED_FREE elements are listed and sorted;
# larger ones are scanned subset by subset in canonical order.
_SORTED_FREE = 12


def iter_proper_subsets(solution: Optional[AffineSolution]) -> Iterator[FrozenSet[int]]:
    """Nonempty proper index subsets in the solution set, lazily, in canonical order."""
    if solution is None:
        return
    n = solution.n_vars
    full = (1 << n) - 1
    if solution.free_count <= _SORTED_FREE:
        found = [mask_to_set(vec) for vec in solution.iter_solutions() if vec not in (0, full)]
        yield from sorted(found, key=subset_order_key)
        return
    for size in range(1, n):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << j for j in combo)
            if solution.contains(mask):
                yield frozenset(j + 1 for j in combo)


def proper_subsets(solution: Optional[AffineSolution], limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """
    Nonempty proper index subsets in the solution set, in canonical order.

    Args:
        solution: Result of solve_affine (None means no solutions)
        limit: Maximum number of subsets to return; None returns all of them,
            capped at 2^GF2_MAX_FREE
    """
    if limit is None:
        limit = 1 << config.GF2_MAX_FREE
        if solution is not None and solution.free_count > config.GF2_MAX_FREE:
            logger.warning(
                f"Affine solution space has {solution.free_count} free variables; "
                f"listing only the first {limit} subsets"
            )
    return list(itertools.islice(iter_proper_subsets(solution), limit))
