"""Logging configuration for the toolkit."""

import logging
import os
import sys
import time
from functools import wraps
from typing import Callable, Optional

LOGGER_NAME = "menkf_app"
LOG_FORMAT = "%(asctime)s - [%(name)s] - [%(levelname)s] - %(message)s"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def resolve_level(log_level: Optional[str] = None) -> int:
    """Explicit level first, then LOG_LEVEL, then INFO; unknown names fall back to INFO."""
    name = (log_level or os.environ.get("LOG_LEVEL") or "INFO").upper()
    if name not in LEVELS:
        name = "INFO"
    return getattr(logging, name)


def setup_logging(log_level: Optional[str] = None) -> logging.Logger:
    """
    Configure the menkf_app logger.

    Args:
        log_level: Optional override (DEBUG, INFO, WARNING, ERROR, CRITICAL).

    Returns:
        The configured logger. Calling again only changes the level.
    """
    logger = logging.getLogger(LOGGER_NAME)
    level = resolve_level(log_level)
    logger.setLevel(level)

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
        logger.debug(f"APP: log handler attached at {logging.getLevelName(level)}")

    return logger


def log_run_summary(logger, stage: str, outcome: str, start_time: Optional[float] = None) -> str:
    """One line per finished run stage; anything but "ok" is logged as an error."""
    duration = f" in {time.time() - start_time:.1f}s" if start_time else ""
    message = f"RUN: {stage} finished with '{outcome}'{duration}"
    if outcome == "ok":
        logger.info(message)
    else:
        logger.error(message)
    return outcome


def timed_execution(logger, label: str) -> Callable:
    """Decorator logging the wall time of the wrapped call at DEBUG, also when it raises."""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            failed = True
            try:
                result = func(*args, **kwargs)
                failed = False
                return result
            finally:
                elapsed_ms = (time.perf_counter() - start_time) * 1000
                status = "failed after" if failed else "completed in"
                logger.debug(f"TIMING: {label} {status} {elapsed_ms:.0f}ms")

        return wrapper

    return decorator
