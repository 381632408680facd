"""
Largest H-eigenvalues of Z-tensors A = D - C and of their absolute tensors.

When C is weakly odd-bipartite with respect to V (and, for odd order, the
rows of C indexed by V vanish) flipping the signs of an eigenvector of |A| on
one side of V gives an eigenvector of A with the same eigenvalue, so
lambda(A) = lambda(|A|). Failing that, the eigenvector of |A| is tried on A
unchanged; only then does lambda(A) come from the brute-force oracle.
"""

from dataclasses import dataclass, replace
from typing import FrozenSet, Iterable, Optional

import numpy as np

from common.config import config
from common.errors import (
    GuardExceededError,
    NoEigenpairFoundError,
    TensorInputError,
)
from common.logging_config import get_logger
from spectra.charpoly import spectral_radius_dim2
from spectra.newton_oracle import brute_force_h_eigenpairs, oracle_applicable
from spectra.options import RhoEstimate, SolverOptions
from spectra.power_iteration import blockwise_rho
from structure.bipartite import find_weak_odd_bipartitions
from tensors.core import EigenPair, Tensor
from tensors.zform import ZDecomposition, z_decompose

logger = get_logger(__name__)


def sign_flip_eigenpair(
    pair: EigenPair,
    V: Iterable[int],
    m: int,
    parity: Optional[str] = None,
) -> EigenPair:
    """
    Move an eigenvector of |A| across the bipartition V.

    even m: y = x on V, -x off V; odd m: y = -x on V, x off V.
    The residual of the result is NaN until the caller revalidates it.

    Raises:
        TensorInputError: If parity does not match m
    """
    expected = "odd" if m % 2 else "even"
    parity = parity or expected
    if parity != expected:
        raise TensorInputError(f"Parity '{parity}' does not match order {m}")

    members = frozenset(V)
    on_v = np.array([i + 1 in members for i in range(len(pair.x))])
    flip_on_v = parity == "odd"
    signs = np.where(on_v == flip_on_v, -1.0, 1.0)
    return EigenPair(
        lam=pair.lam,
        x=signs * pair.x,
        residual=float("nan"),
        iterations=pair.iterations,
        method=f"{pair.method}+sign-flip",
        converged=pair.converged,
    )


def rows_vanish(C: Tensor, V: Iterable[int]) -> bool:
    """True iff C has no stored entry whose first index lies in V."""
    members = frozenset(V)
    return not any(idx[0] in members for idx in C.entries)


def largest_h_eigenpair_nonnegative(N: Tensor, opts: Optional[SolverOptions] = None) -> EigenPair:
    """
    rho(N) and a nonnegative eigenvector for a nonnegative tensor.

    Strongly connected influence graph: power iteration on N. Otherwise the
    largest rho over the strongly connected blocks, with the block vector
    lifted to N (blockwise_rho).

    Raises:
        NotNonnegativeError: If N has a negative entry
        MaxItersExceededError: If a block does not converge or its vector does not lift
    """
    opts = opts or SolverOptions()
    if N.nnz == 0:
        x = np.ones(N.dim) / N.dim ** (1.0 / N.order)
        return EigenPair(lam=0.0, x=x, residual=0.0, method="zero")
    return blockwise_rho(N, opts)


@dataclass(frozen=True)
class AbsoluteComparison:
    """
    lambda(A) next to lambda(|A|).

    route is "sign-flip" when A's pair was transferred from |A| across witness,
    "direct" when the eigenvector of |A| is already an eigenvector of A, and
    "oracle" when it came from the brute-force oracle.
    """

    decomposition: ZDecomposition
    a_pair: EigenPair
    abs_pair: EigenPair
    route: str
    witness: Optional[FrozenSet[int]]
    tol: float

    @property
    def gap(self) -> float:
        return self.abs_pair.lam - self.a_pair.lam

    @property
    def equal(self) -> bool:
        return abs(self.gap) <= self.tol


def transfer_witness(C: Tensor, m: int) -> Optional[FrozenSet[int]]:
    """
    First weak odd-bipartition of C that carries eigenvectors of |A| to A.

    For odd m the rows of C indexed by V must vanish, so the rows of C with a
    stored entry are excluded from V up front.
    """
    outside = {idx[0] for idx in C.entries} if m % 2 == 1 else ()
    found = find_weak_odd_bipartitions(C, limit=1, outside=outside)
    return found[0] if found else None


def compare_with_absolute(
    A: Tensor,
    opts: Optional[SolverOptions] = None,
    tol: Optional[float] = None,
) -> AbsoluteComparison:
    """
    Largest H-eigenpairs of A and |A|.

    lambda(A) <= rho(|A|) for every Z-tensor, so an eigenpair of A at
    lambda(|A|) is the largest one; the oracle only runs when neither the
    sign flip nor the unflipped vector gives such a pair.

    Raises:
        ZFormError: If A is not a Z-tensor with nonnegative diagonal
        NoEigenpairFoundError: If the oracle fallback finds no eigenpair of A
        GuardExceededError: If the fallback is needed and A is too large
    """
    opts = opts or SolverOptions()
    tol = config.ITERATIVE_TOL if tol is None else tol
    decomposition = z_decompose(A)
    C = decomposition.C
    m = A.order
    abs_pair = largest_h_eigenpair_nonnegative(decomposition.abs_tensor(), opts)
    accept = max(opts.tol, abs_pair.residual)

    V = transfer_witness(C, m)
    if V is not None:
        flipped = sign_flip_eigenpair(abs_pair, V, m).revalidated(A)
        if flipped.residual <= accept:
            logger.info(f"lambda(A) = lambda(|A|) = {abs_pair.lam:.12g} via V={sorted(V)}")
            return AbsoluteComparison(
                decomposition=decomposition, a_pair=flipped, abs_pair=abs_pair,
                route="sign-flip", witness=V, tol=tol,
            )
        logger.warning(f"Sign flip across V={sorted(V)} left residual {flipped.residual:.3e} on A")

    direct = replace(abs_pair, method=f"{abs_pair.method}+direct").revalidated(A)
    if direct.residual <= accept:
        logger.info(f"lambda(A) = lambda(|A|) = {abs_pair.lam:.12g}; the eigenvector of |A| solves A")
        return AbsoluteComparison(
            decomposition=decomposition, a_pair=direct, abs_pair=abs_pair,
            route="direct", witness=None, tol=tol,
        )

    pairs = brute_force_h_eigenpairs(A, opts)
    if not pairs:
        raise NoEigenpairFoundError(f"Oracle found no H-eigenpair of {A!r}")
    logger.info(
        f"lambda(A) = {pairs[0].lam:.12g} (oracle), lambda(|A|) = {abs_pair.lam:.12g}"
    )
    return AbsoluteComparison(
        decomposition=decomposition, a_pair=pairs[0], abs_pair=abs_pair,
        route="oracle", witness=None, tol=tol,
    )


def largest_h_eigenvalue_z(A: Tensor, opts: Optional[SolverOptions] = None) -> EigenPair:
    """Largest H-eigenpair of a Z-tensor (the A side of compare_with_absolute)."""
    return compare_with_absolute(A, opts).a_pair


def rho_estimate(T: Tensor, opts: Optional[SolverOptions] = None) -> RhoEstimate:
    """
    Spectral radius of T with the method that produced it.

    Nonnegative tensors use the Perron eigenvalue (blockwise), dimension 2
    uses the characteristic polynomial, anything else the largest |lam| the
    oracle found (a lower bound).
    """
    opts = opts or SolverOptions()
    if T.nnz == 0:
        return RhoEstimate(value=0.0, method="zero")

    if T.is_nonnegative():
        pair = largest_h_eigenpair_nonnegative(T, opts)
        return RhoEstimate(value=pair.lam, method=pair.method)

    if T.dim == 2:
        return RhoEstimate(value=spectral_radius_dim2(T), method="charpoly")

    if not oracle_applicable(T):
        raise GuardExceededError(f"No spectral radius method covers {T!r}")
    pairs = brute_force_h_eigenpairs(T, opts)
    value = max((abs(p.lam) for p in pairs), default=0.0)
    return RhoEstimate(value=value, method="brute", lower_bound=True)
