"""
Logger module for crosscheck.
"""

from crosscheck.logger.logger import get_logger, set_level

__all__ = ["get_logger", "set_level"]
