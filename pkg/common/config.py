"""
Configuration management for the Z-tensor toolkit.
Handles environment variables and global numerical settings.
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()  # Project root

# Project paths
BASE_DIR = Path(__file__).parent.parent
LOGS_DIR = BASE_DIR / "logs"


def _env_float(env_var: str, default: str) -> float:
    """
    Read a float setting from the environment.

    Args:
        env_var: Environment variable name
        default: Default value as a string

    Returns:
        Parsed float

    Raises:
        ValueError: If the value cannot be parsed
    """
    raw = os.getenv(env_var, default)
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            f"Invalid numeric configuration for {env_var}: '{raw}'. "
            f"Expected a number (e.g., '1e-10')"
        )


def _env_int(env_var: str, default: str) -> int:
    """Read an integer setting from the environment."""
    raw = os.getenv(env_var, default)
    try:
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    except ValueError:
        raise ValueError(
            f"Invalid integer configuration for {env_var}: '{raw}'"
        )


def _env_path(env_var: str, default: str) -> Path:
    """Read a directory setting, resolving relative paths against the project root."""
    path = Path(os.getenv(env_var, default))
    return path if path.is_absolute() else BASE_DIR / path


class Config:
    """Configuration class for managing environment variables and settings."""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: Optional[str] = os.getenv("LOG_FILE") or None

    # Solver defaults (SolverOptions)
    SOLVER_TOL: float = _env_float("SOLVER_TOL", "1e-10")
    SOLVER_MAX_ITERS: int = _env_int("SOLVER_MAX_ITERS", "100000")
    ORACLE_STARTS: int = _env_int("ORACLE_STARTS", "200")
    DEDUP_TOL: float = _env_float("DEDUP_TOL", "1e-6")
    DEFAULT_SEED: int = _env_int("DEFAULT_SEED", "0")

    # Comparison tolerances
    ALGEBRAIC_TOL: float = _env_float("ALGEBRAIC_TOL", "1e-12")
    ITERATIVE_TOL: float = _env_float("ITERATIVE_TOL", "1e-8")

    # Guards
    DENSE_GUARD: int = _env_int("DENSE_GUARD", "10000000")
    SUBSET_GUARD: int = _env_int("SUBSET_GUARD", "20")
    ORACLE_MAX_DIM: int = _env_int("ORACLE_MAX_DIM", "4")
    ORACLE_MAX_ORDER: int = _env_int("ORACLE_MAX_ORDER", "6")
    GF2_MAX_FREE: int = _env_int("GF2_MAX_FREE", "20")

    # Harness
    GENERATOR_RETRIES: int = _env_int("GENERATOR_RETRIES", "200")
    HARNESS_WORKERS: int = _env_int("HARNESS_WORKERS", "1")
    REPORTS_DIR: Path = _env_path("REPORTS_DIR", "reports")
    METRICS_HISTORY: int = _env_int("METRICS_HISTORY", "1000")

    # Backend Configuration
    BACKEND_HOST: str = os.getenv("BACKEND_HOST", "0.0.0.0")
    BACKEND_PORT: int = _env_int("BACKEND_PORT", "8000")
    API_MAX_TRIALS: int = _env_int("API_MAX_TRIALS", "10000")

    @classmethod
    def validate(cls) -> bool:
        """
        Validate that the numerical configuration is consistent.

        Returns:
            True if configuration is valid, False otherwise
        """
        # Imported here: logging_config imports this module
        from common.logging_config import get_logger

        logger = get_logger(__name__)
        valid = True

        if not cls.SOLVER_TOL < cls.DEDUP_TOL:
            logger.warning(
                f"SOLVER_TOL ({cls.SOLVER_TOL}) must be smaller than DEDUP_TOL ({cls.DEDUP_TOL})"
            )
            valid = False

        for name in ("SOLVER_MAX_ITERS", "ORACLE_STARTS", "DENSE_GUARD", "SUBSET_GUARD",
                     "ORACLE_MAX_DIM", "ORACLE_MAX_ORDER", "GENERATOR_RETRIES", "HARNESS_WORKERS",
                     "METRICS_HISTORY", "API_MAX_TRIALS"):
            if getattr(cls, name) <= 0:
                logger.warning(f"{name} must be positive, got {getattr(cls, name)}")
                valid = False

        return valid


# Global config instance
config = Config()


def reports_dir(override: Optional[Path] = None) -> Path:
    """
    Resolve (and create) the directory counterexample tensors are written to.

    Args:
        override: Optional directory that replaces REPORTS_DIR

    Returns:
        Existing directory path
    """
    target = Path(override) if override is not None else config.REPORTS_DIR
    target.mkdir(parents=True, exist_ok=True)
    return target
