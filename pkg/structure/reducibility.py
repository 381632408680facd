"""
Reducibility: V is reducing when no entry has its first index in V and all
other indices outside V.
"""

import itertools
from typing import FrozenSet, Iterable, List, Optional, Tuple

from common.config import config
from common.errors import GuardExceededError
from common.logging_config import get_logger
from structure.bipartite import validate_index_set
from structure.gf2 import mask_to_set, set_to_mask
from tensors.core import Tensor

logger = get_logger(__name__)


def _entry_masks(T: Tensor) -> List[Tuple[int, int]]:
    """(first-index bit, mask of the remaining indices) per stored entry."""
    masks = []
    for idx in T.entries:
        rest = 0
        for i in idx[1:]:
            rest |= 1 << (i - 1)
        masks.append((1 << (idx[0] - 1), rest))
    return masks


def _is_reducing_mask(masks: List[Tuple[int, int]], v_mask: int) -> bool:
    return not any(first & v_mask and not rest & v_mask for first, rest in masks)


def is_reducible_for(T: Tensor, V: Iterable[int]) -> bool:
    """
    True iff t_{i1...im} = 0 whenever i1 is in V and i2..im are all outside V.

    Raises:
        InvalidIndexSetError: If V is not a nonempty proper subset
    """
    members = validate_index_set(V, T.dim)
    return _is_reducing_mask(_entry_masks(T), set_to_mask(members))


def find_reducing_set(T: Tensor) -> Optional[FrozenSet[int]]:
    """
    First reducing set by cardinality, then lexicographic order; None if irreducible.

    Raises:
        GuardExceededError: If n exceeds the subset guard
    """
    n = T.dim
    if n > config.SUBSET_GUARD:
        raise GuardExceededError(
            f"Exhaustive reducibility check over 2^{n} subsets exceeds guard n <= {config.SUBSET_GUARD}"
        )
    masks = _entry_masks(T)
    for size in range(1, n):
        for combo in itertools.combinations(range(n), size):
            v_mask = 0
            for j in combo:
                v_mask |= 1 << j
            if _is_reducing_mask(masks, v_mask):
                witness = mask_to_set(v_mask)
                logger.debug(f"{T!r} is reducible for V={sorted(witness)}")
                return witness
    return None


def is_irreducible(T: Tensor) -> bool:
    """
    Exhaustive irreducibility test over all nonempty proper subsets.

    Raises:
        GuardExceededError: If n exceeds the subset guard
    """
    return find_reducing_set(T) is None
