# src/config.py
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from src.errors import ConfigError


@dataclass(frozen=True)
class Settings:
    """
    Runtime settings read from the environment (and an optional .env file).

    theta_precision: decimal digits used when displaying theta values (EXLAB_PRECISION)
    log_level:       logging level name (EXLAB_LOG_LEVEL)
    """
    theta_precision: int = 30
    log_level: str = "WARNING"


def load_settings(env: Optional[dict] = None) -> Settings:
    """
    Build Settings from `env` (defaults to os.environ after loading .env).
    Invalid values raise ConfigError naming the variable.
    """
    if env is None:
        load_dotenv()
        env = dict(os.environ)

    raw_precision = env.get("EXLAB_PRECISION", "30")
    try:
        precision = int(raw_precision)
    except ValueError as e:
        raise ConfigError(f"EXLAB_PRECISION must be an integer, got {raw_precision!r}") from e
    if precision < 1:
        raise ConfigError(f"EXLAB_PRECISION must be >= 1, got {precision}")

    level = env.get("EXLAB_LOG_LEVEL", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"EXLAB_LOG_LEVEL is not a logging level: {level!r}")

    return Settings(theta_precision=precision, log_level=level)
