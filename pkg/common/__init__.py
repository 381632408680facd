"""
Common utilities shared across the toolkit: configuration, logging, errors and metrics.
"""

from common.config import config
from common.errors import ZTensorError

__version__ = "1.0.0"

__all__ = ["config", "ZTensorError"]
