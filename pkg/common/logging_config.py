"""
Logging setup for the Z-tensor toolkit.

Library modules only call get_logger(__name__); entry points (CLI, backend,
demo) call setup_logging once. Solver traces go to an optional file under
logs/ so the console keeps to INFO-level progress.
"""

import logging
import sys
from typing import List, Optional, TextIO

from common.config import LOGS_DIR, config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# Third-party loggers that are chatty at INFO
NOISY_LOGGERS = ("httpx", "multipart", "uvicorn.access")


def _level(name: str) -> int:
    return getattr(logging, str(name).upper(), logging.INFO)


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    stream: Optional[TextIO] = None,
) -> logging.Logger:
    """
    Configure the root logger.

    Args:
        log_level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: File name under logs/; defaults to the LOG_FILE setting.
            The file always records DEBUG so solver traces survive a quiet console.
        stream: Console stream, stdout unless given. The CLI passes stderr.

    Returns:
        Logger for this module
    """
    console_level = _level(log_level)
    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)

    handlers: List[logging.Handler] = [logging.StreamHandler(stream or sys.stdout)]
    handlers[0].setLevel(console_level)

    log_file = log_file or config.LOG_FILE
    if log_file:
        LOGS_DIR.mkdir(exist_ok=True)
        file_handler = logging.FileHandler(LOGS_DIR / log_file)
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)

    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(min(h.level for h in handlers))
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)

    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(console_level, logging.WARNING))

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging initialized - console: {log_level}, file: {log_file or 'none'}")
    return logger


def get_logger(name: str = __name__) -> logging.Logger:
    """Module logger; configuration is left to setup_logging."""
    return logging.getLogger(name)
