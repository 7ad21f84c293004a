"""
Environment-driven settings
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from ..errors import ConfigError

QUAD_MARGIN_ENV = "NCHO_QUAD_ORDER_MARGIN"
DEFAULT_QUAD_MARGIN = 2


def load_environment(env_file: Optional[str] = None) -> bool:
    """
    Load variables from a .env file into the process environment

    Existing environment variables are not overridden.

    Args:
        env_file: Explicit .env path (defaults to ./.env)

    Returns:
        True if a file was found and loaded
    """
    path = Path(env_file) if env_file else Path.cwd() / ".env"
    return load_dotenv(path, override=False)


def quadrature_margin() -> int:
    """
    Extra Gauss-Laguerre nodes on top of the exact-degree count

    Returns:
        The NCHO_QUAD_ORDER_MARGIN value, or 2 when unset

    Raises:
        ConfigError: If the variable is not a non-negative integer
    """
    raw = os.getenv(QUAD_MARGIN_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_QUAD_MARGIN
    try:
        margin = int(raw)
    except ValueError:
        raise ConfigError(f"{QUAD_MARGIN_ENV} must be an integer, got {raw!r}")
    if margin < 0:
        raise ConfigError(f"{QUAD_MARGIN_ENV} must be non-negative, got {margin}")
    return margin
