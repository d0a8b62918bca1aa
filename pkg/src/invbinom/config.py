"""
Runtime configuration for invbinom.

Env vars used:
- `INVBINOM_MAX_TERMS` : series term budget (default 2000000)
- `INVBINOM_MAX_NODES` : quadrature node budget per level (default 100000)
- `INVBINOM_WORKERS` : worker threads for suite runs (default 4)
- `INVBINOM_LOG_LEVEL` : log level name used by the CLI (default WARNING)

Values are read when a `NumericsConfig` is constructed, so a changed
environment takes effect on the next evaluation. Malformed values fall back
to the defaults with a warning.
"""

import logging
import os
from typing import Optional

from .utils import TRACE, get_logger

logger = get_logger(__name__)

DEFAULT_MAX_TERMS = 2_000_000
DEFAULT_MAX_NODES = 100_000
DEFAULT_WORKERS = 4
DEFAULT_LOG_LEVEL = "WARNING"


def _positive_int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(float(raw))
    except Exception:
        logger.warning("Ignoring malformed %s=%r; using %d", name, raw, default)
        return default
    if value < 1:
        logger.warning("Ignoring non-positive %s=%r; using %d", name, raw, default)
        return default
    return value


class NumericsConfig:
    """Budgets and worker counts, resolved from the environment."""

    def __init__(self) -> None:
        self.max_terms = _positive_int_from_env("INVBINOM_MAX_TERMS", DEFAULT_MAX_TERMS)
        self.max_nodes = _positive_int_from_env("INVBINOM_MAX_NODES", DEFAULT_MAX_NODES)
        self.workers = _positive_int_from_env("INVBINOM_WORKERS", DEFAULT_WORKERS)

        level_name = os.getenv("INVBINOM_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper()
        self.log_level = resolve_log_level(level_name)

    def __repr__(self) -> str:
        return (
            f"NumericsConfig(max_terms={self.max_terms}, max_nodes={self.max_nodes}, "
            f"workers={self.workers}, log_level={logging.getLevelName(self.log_level)})"
        )


def resolve_log_level(name: Optional[str]) -> int:
    """
    Map a level name (including ``TRACE``) to its numeric value.

    :param name: Level name such as ``DEBUG``; None means the default
    :return: Numeric logging level, WARNING for unknown names
    """
    if not name:
        return logging.WARNING
    name = name.upper()
    if name == "TRACE":
        return TRACE
    level = logging.getLevelName(name)
    if isinstance(level, int):
        return level
    logger.warning("Unknown log level %r; using WARNING", name)
    return logging.WARNING


def get_config() -> NumericsConfig:
    """Return a configuration snapshot of the current environment."""
    return NumericsConfig()
