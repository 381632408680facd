"""
Seeded random tensor generators.

gen_z_tensor draws A = D - C with C's support restricted to tuples whose
intersection count with a bipartition V has the requested parity, so C is
weakly odd- (or even-) bipartite by construction. Rejection sampling enforces
weak irreducibility of C when asked.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from common.config import config
from common.errors import RetriesExhaustedError, TensorInputError
from common.logging_config import get_logger
from structure.bipartite import validate_index_set
from structure.graphs import is_weakly_irreducible
from tensors.core import IndexTuple, Tensor, all_index_tuples, intersection_count
from tensors.zform import compose

logger = get_logger(__name__)


@dataclass(frozen=True)
class GenSpec:
    """
    Parameters of a random Z-tensor A = D - C.

    Attributes:
        order, dim: shape of A
        density: probability that a candidate tuple (or symmetric orbit) is stored
        bipartition: restrict C's support to tuples with `parity` count against this set
        require_weakly_irreducible: resample until C is weakly irreducible
        diag_range: d_i drawn from [lo, hi], lo >= 0
        offdiag_range: C entries drawn from [lo, hi], lo >= 0
        seed: generator seed
        symmetric: store whole permutation orbits with one value
        strict: store every admissible tuple (density ignored)
        vanishing_rows: rows of C that must be identically zero
        parity: "odd" or "even" count against the bipartition
    """

    order: int
    dim: int
    density: float = 0.3
    bipartition: Optional[FrozenSet[int]] = None
    require_weakly_irreducible: bool = False
    diag_range: Tuple[float, float] = (0.5, 2.0)
    offdiag_range: Tuple[float, float] = (0.1, 1.0)
    seed: int = 0
    symmetric: bool = False
    strict: bool = False
    vanishing_rows: FrozenSet[int] = field(default_factory=frozenset)
    parity: str = "odd"

    def __post_init__(self):
        if self.order < 2 or self.dim < 1:
            raise TensorInputError(f"Invalid shape order={self.order}, dim={self.dim}")
        if not 0.0 < self.density <= 1.0:
            raise TensorInputError(f"density must lie in (0, 1], got {self.density}")
        if self.diag_range[0] < 0 or self.diag_range[0] > self.diag_range[1]:
            raise TensorInputError(f"Invalid diag_range {self.diag_range}")
        if self.offdiag_range[0] < 0 or self.offdiag_range[0] > self.offdiag_range[1]:
            raise TensorInputError(f"Invalid offdiag_range {self.offdiag_range}")
        if self.parity not in ("odd", "even"):
            raise TensorInputError(f"parity must be 'odd' or 'even', got {self.parity}")
        if self.bipartition is not None:
            object.__setattr__(self, "bipartition", validate_index_set(self.bipartition, self.dim))
        object.__setattr__(self, "vanishing_rows", frozenset(self.vanishing_rows))


def _admissible(
    idx: IndexTuple,
    bipartition: Optional[FrozenSet[int]],
    parity: str,
    vanishing_rows: FrozenSet[int],
    allow_diagonal: bool,
) -> bool:
    if not allow_diagonal and all(i == idx[0] for i in idx):
        return False
    if idx[0] in vanishing_rows:
        return False
    if bipartition is not None:
        want = 1 if parity == "odd" else 0
        if intersection_count(idx, bipartition) % 2 != want:
            return False
    return True


def _orbits(tuples: List[IndexTuple]) -> Dict[IndexTuple, List[IndexTuple]]:
    orbits: Dict[IndexTuple, List[IndexTuple]] = {}
    for idx in tuples:
        orbits.setdefault(tuple(sorted(idx)), []).append(idx)
    return orbits


def draw_support(
    rng: np.random.Generator,
    order: int,
    dim: int,
    density: float,
    value_range: Tuple[float, float],
    bipartition: Optional[FrozenSet[int]] = None,
    parity: str = "odd",
    vanishing_rows: FrozenSet[int] = frozenset(),
    symmetric: bool = False,
    strict: bool = False,
    allow_diagonal: bool = False,
    signed: bool = False,
) -> Dict[IndexTuple, float]:
    """
    Random entries on the admissible tuples.

    Symmetric draws pick whole orbits; an orbit is admissible only when all of
    its permutations are.
    """
    candidates = [
        idx for idx in all_index_tuples(order, dim)
        if _admissible(idx, bipartition, parity, vanishing_rows, allow_diagonal)
    ]
    lo, hi = value_range
    entries: Dict[IndexTuple, float] = {}

    if symmetric:
        for key, members in sorted(_orbits(candidates).items()):
            full_orbit = len(members) == len(set(itertools.permutations(key)))
            keep = strict or rng.random() < density
            value = rng.uniform(lo, hi)
            if signed and rng.random() < 0.5:
                value = -value
            if keep and full_orbit:
                for idx in members:
                    entries[idx] = value
    else:
        for idx in candidates:
            keep = strict or rng.random() < density
            value = rng.uniform(lo, hi)
            if signed and rng.random() < 0.5:
                value = -value
            if keep:
                entries[idx] = value
    return entries


def gen_z_tensor(spec: GenSpec) -> Tensor:
    """
    Random Z-tensor A = D - C following spec.

    Raises:
        RetriesExhaustedError: If no weakly irreducible C turns up within GENERATOR_RETRIES draws
    """
    rng = np.random.default_rng(spec.seed)
    for attempt in range(1, config.GENERATOR_RETRIES + 1):
        c_entries = draw_support(
            rng, spec.order, spec.dim, spec.density, spec.offdiag_range,
            bipartition=spec.bipartition, parity=spec.parity,
            vanishing_rows=spec.vanishing_rows, symmetric=spec.symmetric, strict=spec.strict,
        )
        C = Tensor(spec.order, spec.dim, c_entries)
        if spec.require_weakly_irreducible and not is_weakly_irreducible(C):
            continue
        d = rng.uniform(spec.diag_range[0], spec.diag_range[1], size=spec.dim)
        logger.debug(f"Generated Z-tensor (seed {spec.seed}, attempt {attempt}) with {C.nnz} C-entries")
        return compose(d, C)

    raise RetriesExhaustedError(
        f"No weakly irreducible C after {config.GENERATOR_RETRIES} draws "
        f"(order={spec.order}, dim={spec.dim}, density={spec.density})"
    )


def gen_patterned_tensor(
    order: int,
    dim: int,
    seed: int,
    bipartition: Optional[FrozenSet[int]] = None,
    parity: str = "odd",
    strict: bool = False,
    density: float = 0.4,
) -> Tensor:
    """
    Random signed tensor whose support has the given parity against bipartition.

    Diagonal tuples are allowed wherever the parity admits them. With strict,
    every admissible tuple is stored, which makes the tensor strictly odd- or
    even-bipartite.
    """
    rng = np.random.default_rng(seed)
    entries = draw_support(
        rng, order, dim, density, (0.1, 1.0),
        bipartition=None if bipartition is None else validate_index_set(bipartition, dim),
        parity=parity, strict=strict, allow_diagonal=True, signed=True,
    )
    return Tensor(order, dim, entries)


def random_index_set(rng: np.random.Generator, dim: int) -> FrozenSet[int]:
    """Uniform random nonempty proper subset of [dim] (dim >= 2)."""
    if dim < 2:
        raise TensorInputError("A proper nonempty index set needs dim >= 2")
    size = int(rng.integers(1, dim))
    return frozenset(int(i) + 1 for i in rng.choice(dim, size=size, replace=False))
