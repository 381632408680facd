"""
Registry of theorem checks and the seeded trial runner.

A check is a function TrialContext -> TrialOutcome registered under an id.
check_theorem runs `trials` of them with seeds seed, seed+1, ..., optionally
in a process pool, and merges the outcomes in seed order.
"""

import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from common.config import config, reports_dir as resolve_reports_dir
from common.errors import (
    HarnessError,
    MaxItersExceededError,
    NoEigenpairFoundError,
    RetriesExhaustedError,
    UnknownTheoremError,
)
from common.logging_config import get_logger
from common.metrics import TrialStatus, metrics_tracker
from harness.models import FailureRecord, TheoremReport
from spectra.options import SolverOptions
from tensors.core import Tensor
from tensors.io import parse_structured, dump_structured, save_tensor

logger = get_logger(__name__)


@dataclass
class TrialContext:
    """Everything a single trial may depend on; all randomness flows from seed."""
    theorem_id: str
    seed: int
    order: int
    dim: int
    rng: np.random.Generator
    params: Dict[str, Any] = field(default_factory=dict)

    def solver_options(self, **changes) -> SolverOptions:
        return SolverOptions(seed=self.seed, **changes)


@dataclass
class TrialOutcome:
    status: TrialStatus
    detail: str = ""
    tensor: Optional[Tensor] = None

    @classmethod
    def passed(cls, detail: str = "") -> "TrialOutcome":
        return cls(TrialStatus.PASS, detail)

    @classmethod
    def failed(cls, detail: str, tensor: Optional[Tensor] = None) -> "TrialOutcome":
        return cls(TrialStatus.FAIL, detail, tensor)

    @classmethod
    def inconclusive(cls, detail: str, tensor: Optional[Tensor] = None) -> "TrialOutcome":
        return cls(TrialStatus.INCONCLUSIVE, detail, tensor)


CheckFunction = Callable[[TrialContext], TrialOutcome]


@dataclass(frozen=True)
class CheckDefinition:
    theorem_id: str
    func: CheckFunction
    description: str
    orders: Tuple[int, ...]
    dims: Tuple[int, ...]
    parity: Optional[str] = None
    max_dim: Optional[int] = None


_REGISTRY: Dict[str, CheckDefinition] = {}

# Solver misses, not theorem violations
_INCONCLUSIVE_ERRORS = (RetriesExhaustedError, NoEigenpairFoundError, MaxItersExceededError)


def register(
    theorem_id: str,
    description: str,
    orders: Sequence[int] = (3, 4, 5),
    dims: Sequence[int] = (2, 3, 4, 5),
    parity: Optional[str] = None,
    max_dim: Optional[int] = None,
) -> Callable[[CheckFunction], CheckFunction]:
    """Decorator adding a check to the registry."""

    def decorator(func: CheckFunction) -> CheckFunction:
        _REGISTRY[theorem_id] = CheckDefinition(
            theorem_id=theorem_id,
            func=func,
            description=description,
            orders=tuple(orders),
            dims=tuple(dims),
            parity=parity,
            max_dim=max_dim,
        )
        return func

    return decorator


def _load_builtin_checks() -> None:
    import harness.checks  # noqa: F401


def get_check(theorem_id: str) -> CheckDefinition:
    """
    Look up a registered check.

    Raises:
        UnknownTheoremError: If no check has this id
    """
    _load_builtin_checks()
    if theorem_id not in _REGISTRY:
        raise UnknownTheoremError(
            f"Unknown theorem id '{theorem_id}'. Registered: {', '.join(sorted(_REGISTRY))}"
        )
    return _REGISTRY[theorem_id]


def list_checks() -> List[CheckDefinition]:
    _load_builtin_checks()
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


def _resolve_sizes(
    definition: CheckDefinition,
    orders: Optional[Sequence[int]],
    dims: Optional[Sequence[int]],
) -> Tuple[List[int], List[int]]:
    chosen_orders = sorted(set(orders or definition.orders))
    chosen_dims = sorted(set(dims or definition.dims))
    if definition.parity is not None:
        want = 0 if definition.parity == "even" else 1
        chosen_orders = [m for m in chosen_orders if m % 2 == want]
    chosen_dims = [n for n in chosen_dims if n >= 2]
    if definition.max_dim is not None:
        chosen_dims = [n for n in chosen_dims if n <= definition.max_dim]
    if not chosen_orders or not chosen_dims:
        raise HarnessError(
            f"{definition.theorem_id} has no admissible sizes "
            f"(needs {definition.parity or 'any'} order, dims 2..{definition.max_dim or 'n'})"
        )
    return chosen_orders, chosen_dims


def run_trial(
    theorem_id: str,
    seed: int,
    orders: Sequence[int],
    dims: Sequence[int],
    params: Optional[Dict[str, Any]] = None,
) -> Tuple[int, str, Optional[str], str]:
    """
    Run one seeded trial.

    Returns a picklable (seed, status, tensor document or None, detail) tuple,
    so trials can run in worker processes.
    """
    definition = get_check(theorem_id)
    rng = np.random.default_rng(seed)
    order = int(orders[rng.integers(len(orders))])
    dim = int(dims[rng.integers(len(dims))])
    ctx = TrialContext(theorem_id, seed, order, dim, rng, dict(params or {}))

    try:
        outcome = definition.func(ctx)
    except _INCONCLUSIVE_ERRORS as e:
        outcome = TrialOutcome.inconclusive(f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.error(f"{theorem_id} seed {seed} raised {type(e).__name__}: {e}")
        outcome = TrialOutcome.failed(f"{type(e).__name__}: {e}")

    document = dump_structured(outcome.tensor) if outcome.tensor is not None else None
    detail = f"m={order}, n={dim}: {outcome.detail}" if outcome.detail else f"m={order}, n={dim}"
    return seed, outcome.status.value, document, detail


def check_theorem(
    theorem_id: str,
    trials: int,
    seed: int = 0,
    orders: Optional[Sequence[int]] = None,
    dims: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
    reports_dir: Optional[Path] = None,
    params: Optional[Dict[str, Any]] = None,
) -> TheoremReport:
    """
    Run `trials` seeded instances of a registered check.

    Args:
        theorem_id: Registered id (see list_checks)
        trials: Number of trials
        seed: Seed of the first trial; trial k uses seed + k
        orders, dims: Sizes to draw from (check defaults when None)
        workers: Process pool size (HARNESS_WORKERS when None)
        reports_dir: Where counterexample tensors go (REPORTS_DIR when None)
        params: Extra check parameters (e.g. {"a": 0.0} for P-shift)

    Returns:
        TheoremReport with failures sorted by seed

    Raises:
        UnknownTheoremError: If theorem_id is not registered
        HarnessError: If no admissible sizes remain
    """
    definition = get_check(theorem_id)
    if trials < 0:
        raise HarnessError(f"trials must be >= 0, got {trials}")
    chosen_orders, chosen_dims = _resolve_sizes(definition, orders, dims)
    workers = workers or config.HARNESS_WORKERS
    seeds = [seed + k for k in range(trials)]

    run_id = uuid.uuid4().hex
    metrics_tracker.start_check(theorem_id, run_id)
    logger.info(
        f"Checking {theorem_id}: {trials} trials from seed {seed}, "
        f"orders {chosen_orders}, dims {chosen_dims}, workers {workers}"
    )

    args = [(theorem_id, s, chosen_orders, chosen_dims, params) for s in seeds]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_trial, *zip(*args)))
    else:
        results = [run_trial(*a) for a in args]
    results.sort(key=lambda r: r[0])

    passes = inconclusive = 0
    failures: List[FailureRecord] = []
    for trial_seed, status_value, document, detail in results:
        status = TrialStatus(status_value)
        metrics_tracker.record_outcome(run_id, status)
        if status is TrialStatus.PASS:
            passes += 1
            continue
        if status is TrialStatus.INCONCLUSIVE:
            inconclusive += 1
            logger.warning(f"{theorem_id} seed {trial_seed} inconclusive: {detail}")
            continue
        tensor_path = None
        if document is not None:
            target = resolve_reports_dir(reports_dir) / f"{theorem_id}-seed{trial_seed}.json"
            tensor_path = str(save_tensor(parse_structured(document), target))
        logger.warning(f"{theorem_id} seed {trial_seed} FAILED: {detail}")
        failures.append(FailureRecord(seed=trial_seed, tensor_path=tensor_path, detail=detail))

    metrics = metrics_tracker.finish_check(run_id)
    report = TheoremReport(
        theorem_id=theorem_id,
        trials=trials,
        passes=passes,
        inconclusive=inconclusive,
        failures=failures,
        wall_time=metrics.wall_time if metrics else 0.0,
        seed=seed,
        orders=chosen_orders,
        dims=chosen_dims,
    )
    logger.info(
        f"{theorem_id}: {passes}/{trials} passed, {inconclusive} inconclusive, "
        f"{len(failures)} failed in {report.wall_time:.2f}s"
    )
    return report
