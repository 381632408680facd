"""
Solver settings and small result records shared by the spectral routines.
"""

from dataclasses import dataclass, field, replace

from common.config import config
from common.errors import TensorInputError


@dataclass(frozen=True)
class SolverOptions:
    """
    Settings for power iteration and the brute-force oracle.

    Defaults come from the environment (see common.config).
    """

    tol: float = field(default_factory=lambda: config.SOLVER_TOL)
    max_iters: int = field(default_factory=lambda: config.SOLVER_MAX_ITERS)
    starts: int = field(default_factory=lambda: config.ORACLE_STARTS)
    dedup_tol: float = field(default_factory=lambda: config.DEDUP_TOL)
    seed: int = field(default_factory=lambda: config.DEFAULT_SEED)

    def __post_init__(self):
        if self.tol <= 0:
            raise TensorInputError(f"tol must be positive, got {self.tol}")
        if not self.tol < self.dedup_tol:
            raise TensorInputError(
                f"tol ({self.tol}) must be smaller than dedup_tol ({self.dedup_tol})"
            )
        if self.max_iters < 1 or self.starts < 1:
            raise TensorInputError("max_iters and starts must be positive")
        if self.seed < 0:
            raise TensorInputError(f"seed must be unsigned, got {self.seed}")

    def with_(self, **changes) -> "SolverOptions":
        return replace(self, **changes)


@dataclass(frozen=True)
class RhoEstimate:
    """
    Spectral radius estimate.

    lower_bound is set when the value only comes from eigenvalues the oracle
    happened to find.
    """

    value: float
    method: str
    lower_bound: bool = False
