"""
Brute-force H-eigenpair oracle for small tensors.

Solves F(x, lam) = (T x^{m-1} - lam x^{[m-1]}, g(x)) = 0 from many seeded
starts on the unit sphere, where g fixes the scale of x:

    even m:  sum_i x_i^m - 1          (the same as sum (x_i^2)^{m/2} - 1)
    odd m:   sum_i x_i^m - 1          when the start can be scaled onto it,
             sum_i x_i^2 - 1          otherwise

A root that lands on an already accepted pair is counted without further
work. New roots have their tiny components set to zero and are polished on
the remaining support with the largest component pinned to 1, then must pass
both the residual and a per-row relative check (row_mismatch), which rejects
near-solutions whose small components hide a failing equation. Survivors are
deduplicated. The list is never claimed to be complete.
"""

from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import optimize

from common.config import config
from common.errors import GuardExceededError
from common.logging_config import get_logger
from spectra.options import SolverOptions
from tensors.core import EigenPair, Tensor, abs_tensor, apply, apply_jacobian, residual

logger = get_logger(__name__)

_POLISH_STEPS = 60
_STALL_STEPS = 4
_REACHABLE = 1e-3
# Components below _SNAP (relative to the largest) are treated as exact zeros
_SNAP = 1e-6
_SUPPORT_ROUNDS = 3
_ROW_TOL = 1e-9


def check_oracle_guard(T: Tensor) -> None:
    """Raise GuardExceededError unless n and m are within the oracle guard."""
    if T.dim > config.ORACLE_MAX_DIM or T.order > config.ORACLE_MAX_ORDER:
        raise GuardExceededError(
            f"Brute-force oracle is limited to n <= {config.ORACLE_MAX_DIM}, "
            f"m <= {config.ORACLE_MAX_ORDER}; got n={T.dim}, m={T.order}"
        )


def oracle_applicable(T: Tensor) -> bool:
    return T.dim <= config.ORACLE_MAX_DIM and T.order <= config.ORACLE_MAX_ORDER


def sphere_starts(n: int, starts: int, seed: int) -> np.ndarray:
    """Seeded points drawn uniformly from the unit sphere in R^n."""
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((starts, n))
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return points / norms


def _scale_start(x: np.ndarray, m: int) -> Tuple[np.ndarray, bool]:
    """Scale a start onto the power level set; the flag says whether that was possible."""
    level = float(np.sum(x ** m))
    if m % 2 == 1 and level < 0:
        x, level = -x, -level
    if level < _REACHABLE:
        return x / np.linalg.norm(x), False
    return x / level ** (1.0 / m), True


def _make_system(T: Tensor, power_level: bool) -> Tuple[Callable, Callable]:
    m, n = T.order, T.dim

    def system(z: np.ndarray) -> np.ndarray:
        x, lam = z[:n], z[n]
        eig = apply(T, x) - lam * x ** (m - 1)
        level = np.sum(x ** m) - 1.0 if power_level else np.sum(x * x) - 1.0
        return np.append(eig, level)

    def jacobian(z: np.ndarray) -> np.ndarray:
        x, lam = z[:n], z[n]
        jac = np.zeros((n + 1, n + 1))
        jac[:n, :n] = apply_jacobian(T, x) - lam * (m - 1) * np.diag(x ** (m - 2))
        jac[:n, n] = -(x ** (m - 1))
        jac[n, :n] = m * x ** (m - 1) if power_level else 2.0 * x
        return jac

    return system, jacobian


def _polish(system: Callable, jacobian: Callable, z: np.ndarray) -> Tuple[np.ndarray, int]:
    """Least-squares Newton steps, keeping the best iterate; stops once progress stalls."""
    best, best_norm = z, float(np.max(np.abs(system(z))))
    steps = stalled = 0
    for steps in range(1, _POLISH_STEPS + 1):
        step, *_ = np.linalg.lstsq(jacobian(z), -system(z), rcond=None)
        z = z + step
        norm = float(np.max(np.abs(system(z))))
        if not np.isfinite(norm):
            break
        stalled = 0 if norm < 0.9 * best_norm else stalled + 1
        if norm < best_norm:
            best, best_norm = z, norm
        if norm == 0.0 or np.max(np.abs(step)) < 1e-15 or stalled >= _STALL_STEPS:
            break
    return best, steps


def _support_system(T: Tensor, support: np.ndarray, pin: int) -> Tuple[Callable, Callable]:
    """Eigen-equations in (x_S, lam) with x zero off the support S and x_pin = 1."""
    m, n = T.order, T.dim
    pin_column = int(np.flatnonzero(support == pin)[0])

    def expand(z: np.ndarray) -> np.ndarray:
        x = np.zeros(n)
        x[support] = z[:-1]
        return x

    def system(z: np.ndarray) -> np.ndarray:
        x, lam = expand(z), z[-1]
        return np.append(apply(T, x) - lam * x ** (m - 1), x[pin] - 1.0)

    def jacobian(z: np.ndarray) -> np.ndarray:
        x, lam = expand(z), z[-1]
        full = apply_jacobian(T, x) - lam * (m - 1) * np.diag(x ** (m - 2))
        jac = np.zeros((n + 1, len(support) + 1))
        jac[:n, :-1] = full[:, support]
        jac[:n, -1] = -(x ** (m - 1))
        jac[n, pin_column] = 1.0
        return jac

    return system, jacobian


def _refine_on_support(T: Tensor, lam: float, x: np.ndarray) -> Tuple[float, np.ndarray, int]:
    """
    Zero the components below _SNAP and re-solve on the rest.

    Repeats while the polish pushes further components under _SNAP.
    """
    steps = 0
    for _ in range(_SUPPORT_ROUNDS):
        x = canonical_vector(x)
        x[np.abs(x) < _SNAP] = 0.0
        support = np.flatnonzero(x)
        system, jacobian = _support_system(T, support, int(np.argmax(np.abs(x))))
        z, polished = _polish(system, jacobian, np.append(x[support], lam))
        steps += polished
        x = np.zeros(T.dim)
        x[support] = z[:-1]
        lam = float(z[-1])
        if not np.all(np.isfinite(z)) or np.all(np.abs(x[support]) >= _SNAP):
            break
    return lam, x, steps


def row_mismatch(T: Tensor, abs_T: Tensor, lam: float, x: np.ndarray) -> float:
    """
    Largest per-row residual relative to the size of that row's terms.

    A row whose terms are all tiny can have a tiny absolute residual while its
    equation fails; this measure catches that. Rows with no nonzero term count as 0.
    """
    m = T.order
    ax = np.abs(x)
    scale = apply(abs_T, ax) + abs(lam) * ax ** (m - 1)
    diff = np.abs(apply(T, x) - lam * x ** (m - 1))
    rows = scale > 0.0
    return float(np.max(diff[rows] / scale[rows])) if np.any(rows) else 0.0


def canonical_vector(x: np.ndarray) -> np.ndarray:
    """Scale x so that its largest-magnitude component is +1."""
    k = int(np.argmax(np.abs(x)))
    return x / x[k]


def _unit_direction(x: np.ndarray) -> np.ndarray:
    u = x / np.linalg.norm(x)
    k = int(np.argmax(np.abs(u)))
    return u if u[k] > 0 else -u


def _known_pair(found: List[EigenPair], lam: float, x: np.ndarray, dedup_tol: float) -> Optional[EigenPair]:
    direction = _unit_direction(x)
    for pair in found:
        if abs(pair.lam - lam) <= dedup_tol and np.max(np.abs(_unit_direction(pair.x) - direction)) <= dedup_tol:
            return pair
    return None


def _solve_from(
    T: Tensor,
    abs_T: Tensor,
    x0: np.ndarray,
    opts: SolverOptions,
    found: List[EigenPair],
) -> Optional[EigenPair]:
    m, n = T.order, T.dim
    x, power_level = _scale_start(x0, m)
    xm1 = x ** (m - 1)
    denom = float(np.dot(xm1, xm1))
    if denom == 0.0:
        return None
    lam0 = float(np.dot(apply(T, x), xm1)) / denom

    system, jacobian = _make_system(T, power_level)
    z0 = np.append(x, lam0)
    if np.max(np.abs(system(z0))) > opts.tol:
        solution = optimize.root(
            system, z0, jac=jacobian, method="hybr",
            options={"xtol": 1e-14, "maxfev": 200 * (n + 1)},
        )
        z, evaluations = solution.x, int(solution.nfev)
    else:
        z, evaluations = z0, 0

    x, lam = z[:n], float(z[n])
    if not np.all(np.isfinite(z)) or np.max(np.abs(x)) < 1e-8:
        return None
    known = _known_pair(found, lam, x, opts.dedup_tol)
    if known is not None and float(np.max(np.abs(system(z)))) <= opts.dedup_tol:
        return known

    lam, x, steps = _refine_on_support(T, lam, x)
    if not np.all(np.isfinite(x)) or not np.isfinite(lam) or np.max(np.abs(x)) < 1e-8:
        return None
    x = canonical_vector(x)
    res = residual(T, lam, x)
    if res > opts.tol or row_mismatch(T, abs_T, lam, x) > _ROW_TOL:
        return None
    return EigenPair(lam=lam, x=x, residual=res, iterations=evaluations + steps, method="brute")


def _dedup(pairs: List[EigenPair], dedup_tol: float) -> List[EigenPair]:
    kept: List[Tuple[EigenPair, np.ndarray]] = []
    for pair in pairs:
        direction = _unit_direction(pair.x)
        duplicate = any(
            abs(pair.lam - other.lam) <= dedup_tol
            and np.max(np.abs(direction - other_dir)) <= dedup_tol
            for other, other_dir in kept
        )
        if not duplicate:
            kept.append((pair, direction))
    return [pair for pair, _ in kept]


def brute_force_h_eigenpairs(T: Tensor, opts: Optional[SolverOptions] = None) -> List[EigenPair]:
    """
    Real eigenpairs of T found by Newton's method from seeded random starts.

    Args:
        T: Tensor with n <= ORACLE_MAX_DIM and m <= ORACLE_MAX_ORDER
        opts: starts, seed, tol (acceptance residual) and dedup_tol

    Returns:
        Deduplicated pairs sorted by eigenvalue, largest first; each has
        residual <= opts.tol and a canonical eigenvector (largest component +1)

    Raises:
        GuardExceededError: If T is too large for the oracle
    """
    opts = opts or SolverOptions()
    check_oracle_guard(T)

    abs_T = abs_tensor(T)
    found: List[EigenPair] = []
    distinct: List[EigenPair] = []
    for x0 in sphere_starts(T.dim, opts.starts, opts.seed):
        pair = _solve_from(T, abs_T, x0, opts, distinct)
        if pair is None:
            continue
        found.append(pair)
        if not any(pair is other for other in distinct):
            distinct.append(pair)

    # Deterministic merge: sort before dedup
    found.sort(key=lambda p: (-p.lam, tuple(np.round(_unit_direction(p.x), 9))))
    pairs = _dedup(found, opts.dedup_tol)
    logger.info(
        f"Oracle on {T!r}: {len(found)}/{opts.starts} starts converged, "
        f"{len(pairs)} distinct pairs, eigenvalues {[round(p.lam, 9) for p in pairs][:8]}"
    )
    return pairs


def largest_real_eigenvalue(pairs: List[EigenPair]) -> Optional[float]:
    return pairs[0].lam if pairs else None
