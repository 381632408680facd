"""
Shifted power iteration for the spectral radius of a nonnegative tensor.

Iterates on N + I, which has the same eigenvectors as N and eigenvalues
shifted by one, and stops when the Collatz-Wielandt bracket
[min r_i, max r_i], r_i = ((N+I) x^{m-1})_i / x_i^{m-1}, is narrower than tol.

Tensors whose influence graph is not strongly connected are split into their
strongly connected blocks; rho is the largest block value.
"""

from typing import Optional

import networkx as nx
import numpy as np

from common.errors import MaxItersExceededError, NotNonnegativeError, NotWeaklyIrreducibleError
from common.logging_config import get_logger
from spectra.options import SolverOptions
from structure.graphs import influence_graph, is_weakly_irreducible
from tensors.core import EigenPair, Tensor, apply, identity_tensor, principal_subtensor, residual

logger = get_logger(__name__)


def _normalize(x: np.ndarray, m: int) -> np.ndarray:
    """Scale a positive vector so that sum x_i^m = 1."""
    return x / np.sum(x ** m) ** (1.0 / m)


def power_iteration_rho(
    N: Tensor,
    opts: Optional[SolverOptions] = None,
    max_iters: Optional[int] = None,
    require_weakly_irreducible: bool = True,
) -> EigenPair:
    """
    Largest H-eigenvalue rho(N) of a nonnegative tensor with a positive eigenvector.

    Args:
        N: Nonnegative tensor
        opts: Solver options (tol, max_iters)
        max_iters: Overrides opts.max_iters
        require_weakly_irreducible: Reject tensors whose representing graph is disconnected

    Returns:
        EigenPair with x > 0, sum x_i^m = 1, and the bracket history

    Raises:
        NotNonnegativeError: If N has a negative entry
        NotWeaklyIrreducibleError: If N is not weakly irreducible (when required)
        MaxItersExceededError: If the bracket does not close within the budget
    """
    opts = opts or SolverOptions()
    budget = max_iters if max_iters is not None else opts.max_iters
    if not N.is_nonnegative():
        raise NotNonnegativeError(f"Power iteration needs a nonnegative tensor, got {N!r}")
    if require_weakly_irreducible and not is_weakly_irreducible(N):
        raise NotWeaklyIrreducibleError(f"{N!r} is not weakly irreducible")

    m = N.order
    shifted = N + identity_tensor(m, N.dim)
    x = _normalize(np.ones(N.dim), m)
    brackets = []

    for iteration in range(1, budget + 1):
        y = apply(shifted, x)
        ratios = y / x ** (m - 1)
        lo, hi = float(np.min(ratios)), float(np.max(ratios))
        brackets.append((lo, hi))

        if hi - lo <= opts.tol:
            lam = 0.5 * (lo + hi) - 1.0
            pair = EigenPair(
                lam=lam,
                x=x,
                residual=residual(N, lam, x),
                iterations=iteration,
                method="power",
                converged=True,
                brackets=tuple(brackets),
            )
            logger.info(f"Power iteration on {N!r}: rho={lam:.12g} after {iteration} iterations")
            return pair

        x = _normalize(y ** (1.0 / (m - 1)), m)
        if np.any(x <= 0.0) or not np.all(np.isfinite(x)):
            raise MaxItersExceededError(
                f"Power iteration on {N!r} lost positivity after {iteration} iterations"
            )
        if iteration % 10000 == 0:
            logger.debug(f"Power iteration {iteration}: bracket [{lo:.12g}, {hi:.12g}]")

    lo, hi = brackets[-1]
    raise MaxItersExceededError(
        f"Power iteration on {N!r} did not converge in {budget} iterations "
        f"(bracket [{lo - 1:.12g}, {hi - 1:.12g}])"
    )


def _single_block(N: Tensor, opts: SolverOptions) -> EigenPair:
    if N.dim == 1:
        lam = N.entry((1,) * N.order)
        return EigenPair(lam=lam, x=np.ones(1), residual=0.0, method="power", converged=True)
    if N.nnz == 0:
        x = _normalize(np.ones(N.dim), N.order)
        return EigenPair(lam=0.0, x=x, residual=0.0, method="zero")
    return blockwise_rho(N, opts)


def _extend_block_vector(
    N: Tensor,
    condensed: nx.DiGraph,
    block: int,
    pair: EigenPair,
    opts: SolverOptions,
) -> Optional[EigenPair]:
    """
    Lift a block eigenvector to N.

    Classes that cannot reach the block stay zero; classes upstream of it solve
    x_i^{m-1} = (N x^{m-1})_i / lam by monotone fixed-point iteration from zero,
    which converges when every upstream block has a smaller spectral radius.
    """
    m = N.order
    x = np.zeros(N.dim)
    x[np.array(sorted(condensed.nodes[block]["members"])) - 1] = pair.x

    upstream = sorted(i for c in nx.ancestors(condensed, block) for i in condensed.nodes[c]["members"])
    iterations = 0
    if upstream and pair.lam > 0.0:
        rows = np.array(upstream) - 1
        for iterations in range(1, opts.max_iters + 1):
            lifted = (np.maximum(apply(N, x)[rows], 0.0) / pair.lam) ** (1.0 / (m - 1))
            step = float(np.max(np.abs(lifted - x[rows])))
            x[rows] = lifted
            if step <= 1e-3 * opts.tol:
                break

    x = _normalize(x, m)
    res = residual(N, pair.lam, x)
    if res > opts.tol:
        logger.debug(f"Block {sorted(condensed.nodes[block]['members'])} does not lift: residual {res:.3e}")
        return None
    return EigenPair(
        lam=pair.lam,
        x=x,
        residual=res,
        iterations=pair.iterations + iterations,
        method="blocks",
        converged=True,
    )


def blockwise_rho(N: Tensor, opts: Optional[SolverOptions] = None) -> EigenPair:
    """
    rho(N) for any nonnegative tensor, through its strongly connected blocks.

    rho(N) is the largest rho of the principal subtensors on the strongly
    connected classes of the influence graph. Classes whose subtensor is
    itself not strongly connected are split again; strongly connected ones go
    to power_iteration_rho. The eigenvector is a nonnegative block Perron
    vector lifted to N (see _extend_block_vector).

    Returns:
        EigenPair with x >= 0, sum x_i^m = 1; method "power" when N is
        strongly connected, "blocks" otherwise

    Raises:
        NotNonnegativeError: If N has a negative entry
        MaxItersExceededError: If a block does not converge or no block
            eigenvector lifts to N within the budget
    """
    opts = opts or SolverOptions()
    if not N.is_nonnegative():
        raise NotNonnegativeError(f"Block decomposition needs a nonnegative tensor, got {N!r}")

    graph = influence_graph(N)
    if nx.is_strongly_connected(graph):
        if N.dim == 1:
            return _single_block(N, opts)
        return power_iteration_rho(N, opts, require_weakly_irreducible=False)

    condensed = nx.condensation(graph)
    blocks = []
    for block in nx.topological_sort(condensed):
        members = sorted(condensed.nodes[block]["members"])
        blocks.append((block, _single_block(principal_subtensor(N, members), opts)))
    rho = max(pair.lam for _, pair in blocks)
    logger.debug(
        f"{N!r}: {len(blocks)} blocks, rho per block "
        f"{[(sorted(condensed.nodes[b]['members']), round(p.lam, 9)) for b, p in blocks]}"
    )

    # Topological order visits a block before anything it feeds, so the first
    # maximal block has no maximal block upstream of it.
    for block, pair in blocks:
        if pair.lam < rho - opts.tol:
            continue
        lifted = _extend_block_vector(N, condensed, block, pair, opts)
        if lifted is not None:
            logger.info(f"Block decomposition of {N!r}: rho={lifted.lam:.12g}")
            return lifted

    raise MaxItersExceededError(f"No block eigenvector of {N!r} lifts to an eigenvector with residual <= {opts.tol}")
