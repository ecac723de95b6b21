"""
Logging utilities for crosscheck.

Everything goes to stderr; stdout is reserved for the JSON the CLI emits.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler


_console = Console(stderr=True)
_loggers: dict[str, logging.Logger] = {}


def get_logger(name: str, level: int = logging.WARNING) -> logging.Logger:
    """
    Get a logger with the given name and level.

    Args:
        name: The name of the logger.
        level: The logging level.

    Returns:
        A logger with the given name and level.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Check if the logger already has handlers to avoid duplicate handlers
    if not logger.handlers:
        handler = RichHandler(console=_console, show_path=False, rich_tracebacks=True)
        handler.setLevel(logging.NOTSET)
        handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
        logger.addHandler(handler)

    _loggers[name] = logger
    return logger


def set_level(level: int) -> None:
    """
    Set the level of every logger handed out by `get_logger`.

    Args:
        level: The new logging level.
    """
    for logger in _loggers.values():
        logger.setLevel(level)
